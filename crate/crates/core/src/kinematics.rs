//! Energy/momentum balance for the ground → negative-energy transition.
//!
//! In the rest frame of the initial particle, p = 0 = q + k, and the
//! negative-energy particle carries kinetic energy −q²/2m. Energy balance
//! then fixes |k| through c·k = ω₀ + k²/(2m).

use nalgebra::Vector3;

use crate::error::{Error, Result};
use crate::model::PhysicalParams;

pub type Vec3 = Vector3<f64>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionKinematics {
    /// Initial particle momentum.
    pub p: Vec3,
    /// Momentum of the particle in the negative-energy state.
    pub q: Vec3,
    /// Photon wavevector.
    pub k: Vec3,
    /// c·|k|
    pub omega: f64,
    /// q·k/|k|
    pub q_longitudinal: f64,
}

impl TransitionKinematics {
    /// `p − (q + k)`, component-wise.
    pub fn momentum_residual(&self) -> Vec3 {
        self.p - (self.q + self.k)
    }

    /// `[ω₀/2 + |q+k|²/2m] − [−ω₀/2 − |q|²/2m + ω]`.
    pub fn energy_residual(&self, params: &PhysicalParams) -> f64 {
        let m = params.m();
        let w0 = params.omega0();
        let initial = 0.5 * w0 + (self.q + self.k).norm_squared() / (2.0 * m);
        let fin = -0.5 * w0 - self.q.norm_squared() / (2.0 * m) + self.omega;
        initial - fin
    }

    /// Relabels all momenta for an initial particle moving with momentum `p`
    /// (Galilean shift of the rest-frame solution; the photon is left as is,
    /// so this is only meaningful to leading order in v/c).
    pub fn boosted(&self, p: Vec3) -> TransitionKinematics {
        let q = self.q + p;
        let k_hat = self.k / self.k.norm();
        TransitionKinematics {
            p: self.p + p,
            q,
            k: self.k,
            omega: self.omega,
            q_longitudinal: q.dot(&k_hat),
        }
    }
}

/// Photon wavenumber from c·k = ω₀ + k²/(2m), on the branch that tends to
/// ω₀/c as ε → 0.
pub fn photon_wavenumber(params: &PhysicalParams) -> Result<f64> {
    let eps = params.epsilon();
    let disc = 1.0 - 2.0 * eps;
    if disc < 0.0 {
        return Err(Error::Regime(format!(
            "discriminant 1 - 2 omega0/(m c^2) = {disc} < 0 at epsilon = {eps}"
        )));
    }
    // k = mc(1 − √disc), rewritten without the cancellation.
    Ok(2.0 * params.omega0() / (params.c() * (1.0 + disc.sqrt())))
}

/// Rest-frame transition with the photon emitted along `direction`.
pub fn solve_photon_wavevector(
    params: &PhysicalParams,
    direction: &Vec3,
) -> Result<TransitionKinematics> {
    let norm = direction.norm();
    if !((norm - 1.0).abs() <= 1e-12) {
        return Err(Error::invalid(format!(
            "direction must be a unit vector, |d| = {norm}"
        )));
    }
    let kn = photon_wavenumber(params)?;
    let k = direction * kn;
    let q = -k;
    Ok(TransitionKinematics {
        p: Vec3::zeros(),
        q,
        k,
        omega: params.c() * k.norm(),
        q_longitudinal: q.dot(direction),
    })
}

/// v = −q/m for a particle of mass −m carrying momentum q.
pub fn recoil_velocity(q: &Vec3, m: f64) -> Vec3 {
    -q / m
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params(omega0: f64) -> PhysicalParams {
        PhysicalParams::new(1.0, omega0, 1.0, omega0 * 1e-3).unwrap()
    }

    #[test]
    fn wavenumber_matches_quadratic_root() {
        let p = params(0.01);
        let kin = solve_photon_wavevector(&p, &Vec3::z()).unwrap();
        let oracle = 1.0 - 0.98f64.sqrt();
        assert_relative_eq!(kin.k.z, oracle, max_relative = 1e-12);
        assert_relative_eq!(kin.k.z, 0.010_050_51, max_relative = 1e-6);
        assert_eq!(kin.q, -kin.k);
        assert_eq!(kin.k.x, 0.0);
        assert!(kin.momentum_residual().norm() == 0.0);
        assert!(kin.energy_residual(&p).abs() < 1e-10 * kin.omega);
    }

    #[test]
    fn forbidden_above_half_rest_energy() {
        let p = params(0.6);
        match solve_photon_wavevector(&p, &Vec3::x()) {
            Err(Error::Regime(_)) => {}
            other => panic!("expected regime error, got {other:?}"),
        }
    }

    #[test]
    fn direction_must_be_unit() {
        let p = params(0.01);
        assert!(solve_photon_wavevector(&p, &Vec3::new(0.0, 0.0, 1.1)).is_err());
    }

    #[test]
    fn recoil_follows_photon() {
        let v = recoil_velocity(&Vec3::new(0.0, 0.0, -0.01), 1.0);
        assert_eq!(v, Vec3::new(0.0, 0.0, 0.01));
        assert!(v.dot(&Vec3::z()) > 0.0);
        assert_eq!(recoil_velocity(&Vec3::zeros(), 1.0), Vec3::zeros());
        assert_eq!(
            recoil_velocity(&Vec3::new(0.02, 0.0, 0.0), 2.0),
            Vec3::new(-0.01, 0.0, 0.0)
        );
    }

    #[test]
    fn boost_keeps_momentum_balance() {
        let p = params(0.01);
        let kin = solve_photon_wavevector(&p, &Vec3::y()).unwrap();
        let moving = kin.boosted(Vec3::new(0.3, 0.0, 0.0));
        assert!(moving.momentum_residual().norm() < 1e-15);
    }

    #[test]
    fn small_epsilon_deviation_is_linear() {
        let dev = |w0: f64| {
            let p = params(w0);
            p.c() * photon_wavenumber(&p).unwrap() / w0 - 1.0
        };
        let d = [dev(1e-2), dev(1e-3), dev(1e-4)];
        assert_relative_eq!(d[0] / d[1], 10.0, max_relative = 0.02);
        assert_relative_eq!(d[1] / d[2], 10.0, max_relative = 0.02);
    }
}
