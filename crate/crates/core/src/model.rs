//! Model constants and the length/time scales derived from them.
//!
//! Everything is in natural units with ħ = 1. The speed of light is kept
//! explicit and defaults to 1.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Ratio ω₀/(mc²) above which a configuration is flagged as outside the
/// low-energy regime.
pub const DEFAULT_LOW_ENERGY_THRESHOLD: f64 = 0.1;

/// Constants of one oscillator/field configuration.
///
/// Construction validates: all fields finite and positive, γ < ω₀ and
/// ε = ω₀/(mc²) < 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    m: f64,
    omega0: f64,
    a0: f64,
    gamma: f64,
    c: f64,
}

impl PhysicalParams {
    /// Validated constructor with c = 1.
    pub fn new(m: f64, omega0: f64, a0: f64, gamma: f64) -> Result<Self> {
        Self::with_speed_of_light(m, omega0, a0, gamma, 1.0)
    }

    pub fn with_speed_of_light(m: f64, omega0: f64, a0: f64, gamma: f64, c: f64) -> Result<Self> {
        for (name, v) in [
            ("m", m),
            ("omega0", omega0),
            ("a0", a0),
            ("gamma", gamma),
            ("c", c),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(format!(
                    "{name} must be finite and > 0, got {v}"
                )));
            }
        }
        if gamma >= omega0 {
            return Err(Error::invalid(format!(
                "gamma ({gamma}) must be smaller than omega0 ({omega0})"
            )));
        }
        let epsilon = omega0 / (m * c * c);
        if epsilon >= 1.0 {
            return Err(Error::invalid(format!(
                "omega0/(m c^2) = {epsilon} must be < 1"
            )));
        }
        Ok(PhysicalParams {
            m,
            omega0,
            a0,
            gamma,
            c,
        })
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// ε = ω₀/(mc²).
    pub fn epsilon(&self) -> f64 {
        self.omega0 / (self.m * self.c * self.c)
    }

    /// Whether ε is below `threshold`.
    pub fn is_low_energy(&self, threshold: f64) -> bool {
        self.epsilon() < threshold
    }
}

/// Length and time scales fixed by a [`PhysicalParams`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinematicScales {
    /// 1/(mc)
    pub compton_wavelength: f64,
    /// 2πc/ω₀
    pub photon_wavelength: f64,
    /// Dwell time in the negative-energy state, 1/ω₀.
    pub lifetime: f64,
    /// Extent of the localized field, c/ω₀.
    pub localization_radius: f64,
    pub epsilon: f64,
}

pub fn derived_scales(params: &PhysicalParams) -> KinematicScales {
    let PhysicalParams { m, omega0, c, .. } = *params;
    let localization_radius = c / omega0;
    KinematicScales {
        compton_wavelength: 1.0 / (m * c),
        photon_wavelength: 2.0 * PI * localization_radius,
        lifetime: 1.0 / omega0,
        localization_radius,
        epsilon: params.epsilon(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn scales_at_epsilon_one_percent() {
        let p = PhysicalParams::new(1.0, 0.01, 1.0, 1e-3).unwrap();
        let s = derived_scales(&p);
        assert_relative_eq!(s.compton_wavelength, 1.0);
        assert_relative_eq!(s.lifetime, 100.0, max_relative = 1e-14);
        assert_relative_eq!(s.localization_radius, 100.0, max_relative = 1e-14);
        assert_relative_eq!(s.epsilon, 0.01);
        assert_relative_eq!(
            s.photon_wavelength / (2.0 * PI),
            100.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn lifetime_times_level_gap_is_one() {
        let p = PhysicalParams::with_speed_of_light(1.0, 2.0, 1.0, 0.1, 10.0).unwrap();
        let s = derived_scales(&p);
        assert_eq!(s.lifetime, 0.5);
        // E+ - E- = ω₀
        assert_eq!(p.omega0() * s.lifetime, 1.0);
    }

    #[test]
    fn epsilon_is_linear_in_omega0() {
        let a = PhysicalParams::new(2.0, 0.01, 1.0, 1e-3).unwrap();
        let b = PhysicalParams::new(2.0, 0.03, 1.0, 1e-3).unwrap();
        assert_relative_eq!(b.epsilon() / a.epsilon(), 3.0, max_relative = 1e-14);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(PhysicalParams::new(0.0, 0.01, 1.0, 1e-3).is_err());
        assert!(PhysicalParams::new(1.0, 0.01, -1.0, 1e-3).is_err());
        assert!(PhysicalParams::new(1.0, 0.01, 1.0, f64::NAN).is_err());
        // γ ≥ ω₀
        assert!(PhysicalParams::new(1.0, 0.01, 1.0, 0.01).is_err());
        // ε ≥ 1
        assert!(PhysicalParams::new(1.0, 1.0, 1.0, 0.1).is_err());
        // 0.1 ≤ ε < 1 is accepted but flagged
        let p = PhysicalParams::new(1.0, 0.5, 1.0, 0.1).unwrap();
        assert!(!p.is_low_energy(DEFAULT_LOW_ENERGY_THRESHOLD));
    }
}
