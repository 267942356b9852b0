//! Zero-point energy bookkeeping and the regulated parallel-plate Casimir
//! force.

use std::f64::consts::PI;

use crate::ddouble::DD;
use crate::error::{Error, Result};

/// One field mode with its photon occupation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub omega: f64,
    pub occupation: u64,
}

impl Mode {
    pub fn new(omega: f64, occupation: u64) -> Result<Self> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::invalid(format!(
                "mode frequency must be > 0, got {omega}"
            )));
        }
        Ok(Mode { omega, occupation })
    }
}

/// Σ ω(n + ½), ħ = 1.
pub fn mode_sum_energy(modes: &[Mode]) -> f64 {
    modes
        .iter()
        .map(|m| m.omega * (m.occupation as f64 + 0.5))
        .sum()
}

/// (1/2π²c³)∫₀^Ω ω³ dω = Ω⁴/(8π²c³).
pub fn zpe_energy_density(omega_cut: f64, c: f64) -> Result<f64> {
    if !(omega_cut >= 0.0 && omega_cut.is_finite()) {
        return Err(Error::invalid(format!(
            "cutoff must be >= 0, got {omega_cut}"
        )));
    }
    if !(c > 0.0) {
        return Err(Error::invalid("c must be > 0"));
    }
    Ok(omega_cut.powi(4) / (8.0 * PI * PI * c.powi(3)))
}

/// Vacuum energy inside a sphere of `radius` at the cut-off density.
pub fn local_vacuum_energy(omega_cut: f64, c: f64, radius: f64) -> Result<f64> {
    Ok(zpe_energy_density(omega_cut, c)? * 4.0 / 3.0 * PI * radius.powi(3))
}

/// Smallest Λd/c for which the exponential regulator leaves the force intact.
pub const MIN_CUTOFF_TIMES_SEPARATION: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasimirConfig {
    /// Plate separation d.
    pub separation: f64,
    /// Regulator scale Λ in e^(−ω/Λ).
    pub cutoff: f64,
    pub c: f64,
    /// The mode sum stops once a term falls below this fraction of the
    /// n = 0 term.
    pub quad_tolerance: f64,
    pub max_terms: usize,
}

impl CasimirConfig {
    pub fn new(separation: f64, cutoff: f64) -> Self {
        CasimirConfig {
            separation,
            cutoff,
            c: 1.0,
            quad_tolerance: 1e-32,
            max_terms: 50_000_000,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.separation > 0.0 && self.separation.is_finite()) {
            return Err(Error::invalid(format!(
                "separation must be > 0, got {}",
                self.separation
            )));
        }
        if !(self.cutoff > 0.0 && self.cutoff.is_finite() && self.c > 0.0) {
            return Err(Error::invalid("cutoff and c must be > 0"));
        }
        let lambda_d = self.cutoff * self.separation / self.c;
        if lambda_d < MIN_CUTOFF_TIMES_SEPARATION {
            return Err(Error::invalid(format!(
                "cutoff*separation/c = {lambda_d} is below {MIN_CUTOFF_TIMES_SEPARATION}"
            )));
        }
        if !(self.quad_tolerance > 0.0 && self.quad_tolerance < 1.0) {
            return Err(Error::invalid("quad tolerance must be in (0, 1)"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasimirResult {
    /// Force per unit area; negative is attractive.
    pub force: f64,
    /// Regulated energy per unit area at the configured separation.
    pub energy: f64,
    /// Modes summed at the configured separation.
    pub n_terms: usize,
    /// First omitted mode term relative to |energy|.
    pub truncation_bound: f64,
    pub step: f64,
}

struct RegulatedSum {
    /// Sum minus integral, in units of Λ³/(2πc²).
    value: DD,
    n_terms: usize,
    first_omitted: f64,
}

/// Σ′ₙ P(an) − ∫₀^∞ P(an) dn with P(x) = e^{−x}(x² + 2x + 2), a = cπ/(dΛ).
///
/// P(an)·Λ³/(2πc²) is the zero-point energy per unit area of the two
/// polarizations of plate mode n, already integrated over transverse
/// wavevectors with the e^(−ω/Λ) regulator; the n = 0 mode has a single
/// polarization, hence the primed sum.
fn regulated_sum(separation: f64, cfg: &CasimirConfig) -> Result<RegulatedSum> {
    let a = DD::from_f64(cfg.c) * DD::PI / (DD::from_f64(separation) * DD::from_f64(cfg.cutoff));
    let ratio = DD::exp_small(-a);
    let two = DD::from_f64(2.0);
    let stop = cfg.quad_tolerance * 2.0;

    let mut decay = DD::ONE;
    let mut sum = DD::ZERO;
    let mut n = 0usize;
    let first_omitted = loop {
        let x = a * DD::from_f64(n as f64);
        let term = decay * (x * x + two * x + two);
        if term.to_f64() < stop {
            break term.to_f64();
        }
        if n >= cfg.max_terms {
            return Err(Error::Convergence {
                what: "Casimir mode sum".into(),
                achieved: term.to_f64() / 2.0,
                requested: cfg.quad_tolerance,
            });
        }
        sum = sum + term;
        decay = decay * ratio;
        n += 1;
    };
    // Half weight on n = 0, and ∫₀^∞ P(an) dn = 6/a.
    let value = sum - DD::ONE - DD::from_f64(6.0) / a;
    Ok(RegulatedSum {
        value,
        n_terms: n,
        first_omitted,
    })
}

/// Regulated vacuum energy per unit area between perfect plates, with the
/// free-space (n-integral) part removed.
pub fn casimir_energy(config: &CasimirConfig) -> Result<f64> {
    config.validate()?;
    let s = config.cutoff.powi(3) / (2.0 * PI * config.c * config.c);
    Ok(s * regulated_sum(config.separation, config)?.value.to_f64())
}

/// −dE/dd by central difference with step 10⁻⁴·d.
pub fn casimir_force(config: &CasimirConfig) -> Result<CasimirResult> {
    config.validate()?;
    let d = config.separation;
    let h = 1e-4 * d;
    let (dp, dm) = (d + h, d - h);
    let plus = regulated_sum(dp, config)?;
    let minus = regulated_sum(dm, config)?;
    let center = regulated_sum(d, config)?;
    let s = config.cutoff.powi(3) / (2.0 * PI * config.c * config.c);

    let slope = (plus.value - minus.value).to_f64() / (dp - dm);
    let force = -s * slope;
    let energy = s * center.value.to_f64();
    if !force.is_finite() {
        return Err(Error::Numerical("non-finite Casimir force".into()));
    }
    let truncation_bound = center.first_omitted / center.value.to_f64().abs();
    if truncation_bound > 1e-6 {
        return Err(Error::Convergence {
            what: "Casimir mode sum truncation".into(),
            achieved: truncation_bound,
            requested: 1e-6,
        });
    }
    Ok(CasimirResult {
        force,
        energy,
        n_terms: center.n_terms,
        truncation_bound,
        step: h,
    })
}

/// −π²/(240 d⁴), ħ = c = 1.
pub fn casimir_reference(d: f64) -> f64 {
    -PI * PI / (240.0 * d.powi(4))
}
