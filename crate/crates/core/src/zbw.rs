//! Zitterbewegung: width dynamics of the centre-of-mass packet and a seeded
//! random walk of emission/re-absorption cycles.
//!
//! The random stream is ChaCha8 seeded through `SeedableRng::seed_from_u64`,
//! so a trajectory is fixed by (params, cycle count, seed).

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::kinematics::{recoil_velocity, solve_photon_wavevector, Vec3};
use crate::model::PhysicalParams;
use crate::wavefunction::width;

pub const MIN_PROFILE_SAMPLES: usize = 32;

#[derive(Debug, Clone, PartialEq)]
pub struct WidthProfile {
    pub rho: f64,
    pub times: Vec<f64>,
    pub widths: Vec<f64>,
    /// widths[0] − a₀
    pub jump_at_zero: f64,
    pub minimum_time: f64,
    pub minimum_width: f64,
    /// Index of 2ρ/c in `times`.
    pub turning_index: usize,
}

/// Samples a(ρ, t) on a uniform grid that contains t = 0 and t = 2ρ/c as
/// exact nodes. The grid has `n_samples` nodes; its spacing is 2ρ/c divided
/// by a whole number of steps, so the last node lands near (not exactly on)
/// `t_max`.
pub fn width_profile(
    rho: f64,
    t_max: f64,
    n_samples: usize,
    params: &PhysicalParams,
) -> Result<WidthProfile> {
    let c = params.c();
    if !(rho > 0.0) {
        return Err(Error::invalid(format!("rho must be > 0, got {rho}")));
    }
    let turning = 2.0 * rho / c;
    if !(t_max > turning) {
        return Err(Error::invalid(format!(
            "t_max must exceed 2 rho/c = {turning}"
        )));
    }
    if n_samples < MIN_PROFILE_SAMPLES {
        return Err(Error::invalid(format!(
            "need at least {MIN_PROFILE_SAMPLES} samples, got {n_samples}"
        )));
    }
    let steps = n_samples - 1;
    let j = ((steps as f64 * turning / t_max).round() as usize).clamp(1, steps - 1);
    let dt = turning / j as f64;
    let mut times: Vec<f64> = (0..n_samples).map(|i| i as f64 * dt).collect();
    times[j] = turning;
    if times[0] != 0.0 || times[j] != turning {
        return Err(Error::Numerical(
            "profile grid misses t = 0 or t = 2 rho/c".into(),
        ));
    }
    let widths: Vec<f64> = times.iter().map(|&t| width(rho, t, params)).collect();
    let (imin, &wmin) = widths
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty grid");
    Ok(WidthProfile {
        rho,
        jump_at_zero: widths[0] - params.a0(),
        minimum_time: times[imin],
        minimum_width: wmin,
        turning_index: j,
        times,
        widths,
    })
}

impl WidthProfile {
    /// Strictly decreasing up to the minimum and strictly increasing after.
    pub fn is_down_then_up(&self) -> bool {
        let i = self.turning_index;
        self.widths[..=i].windows(2).all(|w| w[1] < w[0])
            && self.widths[i..].windows(2).all(|w| w[1] > w[0])
    }
}

/// Seeded random stream used by the walk.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Unit vector with density ∝ sin²θ about `axis`, uniform in azimuth,
/// by rejection against the uniform sphere.
pub fn sample_direction<R: RngExt + ?Sized>(rng: &mut R, axis: &Vec3) -> Vec3 {
    let (u, phi) = loop {
        let u: f64 = 2.0 * rng.random::<f64>() - 1.0;
        let phi: f64 = 2.0 * std::f64::consts::PI * rng.random::<f64>();
        let accept: f64 = rng.random();
        if accept < 1.0 - u * u {
            break (u, phi);
        }
    };
    let s = (1.0 - u * u).sqrt();
    let (e1, e2) = orthonormal_pair(axis);
    let v = axis * u + e1 * (s * phi.cos()) + e2 * (s * phi.sin());
    v / v.norm()
}

/// Two unit vectors completing `axis` to a right-handed frame.
fn orthonormal_pair(axis: &Vec3) -> (Vec3, Vec3) {
    let helper = if axis.x.abs() < 0.9 {
        Vec3::x()
    } else {
        Vec3::y()
    };
    let e1 = (helper - axis * helper.dot(axis)).normalize();
    let e2 = axis.cross(&e1);
    (e1, e2)
}

/// One emission / re-absorption cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecoilPair {
    pub emission_momentum_change: Vec3,
    pub absorption_momentum_change: Vec3,
    pub photon_direction: Vec3,
    pub cycle_displacement: Vec3,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub seed: u64,
    pub axis: Vec3,
    pub pairs: Vec<RecoilPair>,
    /// Position after each cycle.
    pub cumulative_positions: Vec<Vec3>,
}

/// Runs `n_cycles` emission/re-absorption cycles starting at rest at the
/// origin. Each cycle emits along a dipole-weighted direction about ẑ,
/// drifts for τ = 1/ω₀ at the recoil velocity, then re-absorbs the photon,
/// which restores zero momentum.
pub fn run_cycles(params: &PhysicalParams, n_cycles: usize, seed: u64) -> Result<Trajectory> {
    if n_cycles == 0 {
        return Err(Error::invalid("need at least one cycle"));
    }
    let axis = Vec3::z();
    let dwell = 1.0 / params.omega0();
    let mut rng = seeded_rng(seed);
    let mut pairs = Vec::with_capacity(n_cycles);
    let mut positions = Vec::with_capacity(n_cycles);
    let mut position = Vec3::zeros();
    for _ in 0..n_cycles {
        let dir = sample_direction(&mut rng, &axis);
        let kin = solve_photon_wavevector(params, &dir)?;
        let emission = kin.q - kin.p;
        let velocity = recoil_velocity(&kin.q, params.m());
        let displacement = velocity * dwell;
        position += displacement;
        pairs.push(RecoilPair {
            emission_momentum_change: emission,
            absorption_momentum_change: -emission,
            photon_direction: dir,
            cycle_displacement: displacement,
        });
        positions.push(position);
    }
    Ok(Trajectory {
        seed,
        axis,
        pairs,
        cumulative_positions: positions,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryStats {
    pub n_cycles: usize,
    /// Mean per-cycle displacement vector.
    pub mean_displacement: Vec3,
    /// √⟨|Δr|²⟩ over cycles.
    pub rms_displacement: f64,
    pub step_mean: f64,
    pub step_min: f64,
    pub step_max: f64,
    /// Distance from the origin after the last cycle.
    pub net_displacement: f64,
    /// ⟨cos²θ⟩ of the photon directions about the trajectory axis.
    pub mean_cos2: f64,
    /// Largest |emission + absorption| component over all pairs.
    pub max_pair_momentum_residual: f64,
    /// Every |mean_i| ≤ 3·step_mean/√N.
    pub mean_within_band: bool,
}

pub fn statistics(traj: &Trajectory) -> Result<TrajectoryStats> {
    let n = traj.pairs.len();
    if n == 0 {
        return Err(Error::invalid("empty trajectory"));
    }
    let nf = n as f64;
    let mut sum = Vec3::zeros();
    let mut sq = 0.0;
    let mut step_sum = 0.0;
    let mut step_min = f64::INFINITY;
    let mut step_max = 0.0_f64;
    let mut cos2 = 0.0;
    let mut residual = 0.0_f64;
    for p in &traj.pairs {
        let d = p.cycle_displacement;
        let len = d.norm();
        sum += d;
        sq += d.norm_squared();
        step_sum += len;
        step_min = step_min.min(len);
        step_max = step_max.max(len);
        cos2 += p.photon_direction.dot(&traj.axis).powi(2);
        let r = p.emission_momentum_change + p.absorption_momentum_change;
        residual = residual.max(r.amax());
    }
    let mean = sum / nf;
    let step_mean = step_sum / nf;
    let band = 3.0 * step_mean / nf.sqrt();
    Ok(TrajectoryStats {
        n_cycles: n,
        mean_displacement: mean,
        rms_displacement: (sq / nf).sqrt(),
        step_mean,
        step_min,
        step_max,
        net_displacement: traj.cumulative_positions.last().map_or(0.0, |p| p.norm()),
        mean_cos2: cos2 / nf,
        max_pair_momentum_residual: residual,
        mean_within_band: mean.iter().all(|m| m.abs() <= band),
    })
}
