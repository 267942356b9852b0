//! Closed-form wavefunction objects of the photon / negative-energy
//! particle pair: the initial packet, plane-wave photon modes, the dipole
//! polarization, the momentum-space coefficients, and the entangled
//! amplitude with its factorized densities.

use std::f64::consts::PI;

use nalgebra::Vector3;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kinematics::Vec3;
use crate::model::PhysicalParams;

pub type CVec3 = Vector3<Complex64>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavefieldConfig {
    pub params: PhysicalParams,
    /// Normalization length L; cancels in every density.
    pub box_length: f64,
    /// Stands for e·z₊₋; only coefficient-level outputs depend on it.
    pub dipole_coupling: f64,
    /// Intra-atomic dipole axis.
    pub z_axis: Vec3,
}

impl WavefieldConfig {
    pub fn new(params: PhysicalParams) -> Self {
        WavefieldConfig {
            params,
            box_length: 1.0,
            dipole_coupling: 1.0,
            z_axis: Vec3::z(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.box_length.is_finite() && self.box_length > 0.0) {
            return Err(Error::invalid(format!(
                "box length must be > 0, got {}",
                self.box_length
            )));
        }
        if (self.z_axis.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::invalid("z axis must be a unit vector"));
        }
        Ok(())
    }
}

/// Particle and photon positions at a time t ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvaluationPoint {
    pub r_at: Vec3,
    pub r_ph: Vec3,
    pub t: f64,
}

impl EvaluationPoint {
    pub fn new(r_at: Vec3, r_ph: Vec3, t: f64) -> Result<Self> {
        if !(t >= 0.0) {
            return Err(Error::invalid(format!("time must be >= 0, got {t}")));
        }
        Ok(EvaluationPoint { r_at, r_ph, t })
    }

    /// Relative vector r_ph − r_at.
    pub fn relative(&self) -> Vec3 {
        self.r_ph - self.r_at
    }

    pub fn rho(&self) -> f64 {
        self.relative().norm()
    }

    /// Angle between `axis` and the relative vector.
    pub fn theta_prime(&self, axis: &Vec3) -> f64 {
        let rel = self.relative();
        rel.cross(axis).norm().atan2(rel.dot(axis))
    }

    /// R = r_at − ρ·ω₀/(mc²).
    pub fn center_of_mass(&self, params: &PhysicalParams) -> Vec3 {
        self.r_at - self.relative() * params.epsilon()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityKind {
    Relative,
    CenterOfMass,
    Joint,
}

/// Density values over a list of evaluation points, in input order.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityField {
    pub kind: DensityKind,
    pub values: Vec<f64>,
}

impl DensityField {
    /// Evaluates `kind` at every point. Points are evaluated independently,
    /// so the result does not depend on the thread count.
    pub fn evaluate(
        points: &[EvaluationPoint],
        kind: DensityKind,
        cfg: &WavefieldConfig,
    ) -> Result<Self> {
        cfg.validate()?;
        let values = points
            .par_iter()
            .map(|pt| density_at(pt, kind, cfg))
            .collect::<Result<Vec<f64>>>()?;
        Ok(DensityField { kind, values })
    }
}

fn density_at(pt: &EvaluationPoint, kind: DensityKind, cfg: &WavefieldConfig) -> Result<f64> {
    let p = &cfg.params;
    let rho = pt.rho();
    match kind {
        DensityKind::Relative => density_rel(rho, pt.theta_prime(&cfg.z_axis), pt.t, p),
        DensityKind::CenterOfMass => density_cm(&pt.center_of_mass(p), rho, pt.t, p),
        DensityKind::Joint => Ok(density_rel(rho, pt.theta_prime(&cfg.z_axis), pt.t, p)?
            * density_cm(&pt.center_of_mass(p), rho, pt.t, p)?),
    }
}

/// Initial Gaussian centre-of-mass packet, (√π a₀)^(−3/2) exp(−r²/2a₀²).
pub fn initial_packet(r: &Vec3, a0: f64) -> f64 {
    (PI.sqrt() * a0).powf(-1.5) * (-r.norm_squared() / (2.0 * a0 * a0)).exp()
}

/// Plane-wave photon mode L^(−3/2)·e·exp(i(k·r − ωt)), ω = c|k|.
pub fn photon_mode(
    r_ph: &Vec3,
    t: f64,
    k: &Vec3,
    pol: &Vec3,
    box_length: f64,
    c: f64,
) -> Result<CVec3> {
    if !(box_length > 0.0) {
        return Err(Error::invalid("box length must be > 0"));
    }
    if pol.dot(k).abs() > 1e-12 * k.norm().max(1.0) {
        return Err(Error::invalid("polarization must be orthogonal to k"));
    }
    let omega = c * k.norm();
    let phase = Complex64::from_polar(box_length.powf(-1.5), k.dot(r_ph) - omega * t);
    Ok(pol.map(|x| phase * x))
}

/// Unit polarization in the (k, ẑ) plane, orthogonal to k:
/// e = [k²ẑ − k(k·ẑ)] / [k√(k² − (k·ẑ)²)].
pub fn polarization_vector(k: &Vec3, z_axis: &Vec3) -> Result<Vec3> {
    let k2 = k.norm_squared();
    let kz = k.dot(z_axis);
    let perp2 = k2 - kz * kz;
    if !(perp2 > 1e-24 * k2) {
        return Err(Error::Degenerate("k is parallel to the dipole axis".into()));
    }
    Ok((z_axis * k2 - k * kz) / (k2.sqrt() * perp2.sqrt()))
}

fn sin_angle(a: &Vec3, b: &Vec3) -> f64 {
    let n = a.norm() * b.norm();
    if n == 0.0 {
        0.0
    } else {
        a.cross(b).norm() / n
    }
}

/// Long-time expansion coefficient C_{q,k} with an explicit photon
/// frequency `omega`, so the resonance can be scanned at fixed geometry.
pub fn coefficient_at(q: &Vec3, k: &Vec3, omega: f64, cfg: &WavefieldConfig) -> Result<Complex64> {
    if !(k.norm() > 0.0) {
        return Err(Error::invalid("|k| must be > 0"));
    }
    if !(omega > 0.0) {
        return Err(Error::invalid("photon frequency must be > 0"));
    }
    let p = &cfg.params;
    let m = p.m();
    let w0 = p.omega0();
    let sin_theta = sin_angle(k, &cfg.z_axis);
    let prefactor = cfg.dipole_coupling
        * w0
        * (2.0 * PI).powi(2)
        * omega.powf(-0.5)
        * (p.a0() / (cfg.box_length.powi(2) * PI.sqrt())).powf(1.5)
        * sin_theta;
    let detuning = -q.norm_squared() / (2.0 * m) - (q + k).norm_squared() / (2.0 * m) + omega - w0;
    let denominator = Complex64::new(detuning, 0.5 * p.gamma());
    Ok(Complex64::new(0.0, -prefactor) / denominator)
}

/// C_{q,k} with ω = c|k|.
pub fn coefficient(q: &Vec3, k: &Vec3, cfg: &WavefieldConfig) -> Result<Complex64> {
    coefficient_at(q, k, cfg.params.c() * k.norm(), cfg)
}

/// Centre-of-mass width a(ρ,t) = [a₀² + (t − 2ρ/c)²/(m²a₀²)]^(1/2).
pub fn width(rho: f64, t: f64, params: &PhysicalParams) -> f64 {
    let a0 = params.a0();
    let m = params.m();
    let lag = t - 2.0 * rho / params.c();
    (a0 * a0 + lag * lag / (m * m * a0 * a0)).sqrt()
}

/// Light-cone step Θ(ct − ρ), with Θ(0) = 1.
fn inside_light_cone(rho: f64, t: f64, c: f64) -> bool {
    c * t - rho >= 0.0
}

/// Relative-motion density (3γ sin²θ′)/(8πcρ²)·Θ(ct − ρ)·exp(γ(ρ − ct)/c).
pub fn density_rel(rho: f64, theta_prime: f64, t: f64, params: &PhysicalParams) -> Result<f64> {
    if rho == 0.0 {
        return Err(Error::Singularity(
            "relative density diverges as 1/rho^2 at rho = 0".into(),
        ));
    }
    if !(rho > 0.0) {
        return Err(Error::invalid(format!("rho must be > 0, got {rho}")));
    }
    let c = params.c();
    if !inside_light_cone(rho, t, c) {
        return Ok(0.0);
    }
    let g = params.gamma();
    let s = theta_prime.sin();
    Ok(3.0 * g * s * s / (8.0 * PI * c * rho * rho) * (g * (rho - c * t) / c).exp())
}

/// Centre-of-mass density [√π a(ρ,t)]^(−3)·exp(−R²/a(ρ,t)²).
pub fn density_cm(r_cm: &Vec3, rho: f64, t: f64, params: &PhysicalParams) -> Result<f64> {
    if !(rho >= 0.0 && t >= 0.0) {
        return Err(Error::invalid(format!(
            "need rho >= 0 and t >= 0, got rho={rho}, t={t}"
        )));
    }
    let a = width(rho, t, params);
    Ok((PI.sqrt() * a).powi(-3) * (-r_cm.norm_squared() / (a * a)).exp())
}

/// Entangled amplitude, projected on the polarization e′.
///
/// The ρ, t and R dependence is the closed form obtained after both
/// momentum integrals; the real prefactor is fixed so that
/// |amplitude|² = density_rel × density_cm exactly.
pub fn amplitude(point: &EvaluationPoint, cfg: &WavefieldConfig) -> Result<Complex64> {
    cfg.validate()?;
    let p = &cfg.params;
    let rho = point.rho();
    if rho == 0.0 {
        return Err(Error::Singularity(
            "amplitude diverges as 1/rho at rho = 0".into(),
        ));
    }
    let c = p.c();
    let t = point.t;
    if !inside_light_cone(rho, t, c) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let m = p.m();
    let a0 = p.a0();
    let g = p.gamma();
    let sin_theta = sin_angle(&point.relative(), &cfg.z_axis);
    let lag = t - 2.0 * rho / c;
    let r_cm = point.center_of_mass(p);

    let norm = (3.0 * g / (8.0 * PI * c)).sqrt() * PI.powf(-0.75);
    let envelope = norm * sin_theta / rho * (g * (rho - c * t) / (2.0 * c)).exp();
    let spread = Complex64::new(a0, lag / (m * a0)).powf(-1.5);
    let w = Complex64::new(a0 * a0, lag / m);
    let gaussian = (-r_cm.norm_squared() / (2.0 * w)).exp();
    Ok(spread * gaussian * envelope)
}
