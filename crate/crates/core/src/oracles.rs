//! Brute-force numerical checks of the analytic integration steps:
//!
//! * the complex-width Gaussian momentum integral, against
//!   (2π/w)^(3/2)·exp(−R²/2w);
//! * the resonant photon k-integral, against its pole approximation
//!   Θ(−x)·exp(γx/2c);
//! * the normalization of the relative and centre-of-mass densities.
//!
//! Everything here is sequential and evaluates in a fixed order, so equal
//! inputs give bitwise equal outputs.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kinematics::Vec3;
use crate::model::PhysicalParams;
use crate::quadrature::{gk21, integrate, integrate_panels, wynn_epsilon, Tolerance};
use crate::wavefunction::{density_cm, density_rel, width};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tolerance: f64,
    pub max_subdivisions: usize,
    /// Integrands are truncated where their envelope drops below this
    /// fraction of its peak.
    pub envelope_floor: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tolerance: 1e-8,
            max_subdivisions: 20_000,
            envelope_floor: 1e-18,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tolerance > 0.0 && self.rel_tolerance <= 1e-2) {
            return Err(Error::invalid(format!(
                "relative tolerance must be in (0, 1e-2], got {}",
                self.rel_tolerance
            )));
        }
        if !(self.envelope_floor > 0.0 && self.envelope_floor < 1e-12) {
            return Err(Error::invalid("envelope floor must be in (0, 1e-12)"));
        }
        if self.max_subdivisions < 2 {
            return Err(Error::invalid("max subdivisions must be >= 2"));
        }
        Ok(())
    }

    /// Internal target, tighter than the contract so the contract holds
    /// against the exact value and not just the error estimate.
    fn inner(&self) -> Tolerance {
        Tolerance {
            abs: 0.0,
            rel: 1e-2 * self.rel_tolerance,
            max_intervals: self.max_subdivisions,
        }
    }
}

/// Closed form of ∫d³q exp(−q²w/2 + iq·R).
pub fn gaussian_closed_form(w: Complex64, r: &Vec3) -> Complex64 {
    (2.0 * PI / w).powf(1.5) * (-r.norm_squared() / (2.0 * w)).exp()
}

/// sin(x)/x, with the removable point handled.
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// Smallest q with q²·exp(−a q²/2) below `floor` times its peak value.
fn gaussian_truncation(a: f64, floor: f64) -> f64 {
    // Peak of q² e^{−a q²/2} is at q² = 2/a, value 2/(a e).
    let mut s = 2.0 / a + 2.0 * (-floor.ln()) / a;
    for _ in 0..50 {
        // Solve (a s/2) − ln(a s/2) − 1 = −ln(floor) for s = q².
        let u = 0.5 * a * s;
        let target = -floor.ln();
        let next = 2.0 / a * (target + 1.0 + u.ln());
        if (next - s).abs() <= 1e-12 * s {
            s = next;
            break;
        }
        s = next;
    }
    s.sqrt()
}

/// ∫d³q exp(−q²w/2 + iq·R), evaluated as a radial integral
/// 4π∫q²·sinc(q|R|)·exp(−q²w/2) dq after the angular integration.
pub fn complex_gaussian_integral(
    w: Complex64,
    r: &Vec3,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    spec.validate()?;
    if !(w.re > 0.0) {
        return Err(Error::Divergence(format!(
            "Re(w) must be > 0, got {}",
            w.re
        )));
    }
    let radius = r.norm();
    let q_max = gaussian_truncation(w.re, spec.envelope_floor);
    let f = |q: f64| 4.0 * PI * q * q * sinc(q * radius) * (-0.5 * w * q * q).exp();

    // Seed one panel per half oscillation of the combined phase.
    let total_phase = 0.5 * w.im.abs() * q_max * q_max + radius * q_max;
    let panels = ((total_phase / PI).ceil() as usize).clamp(8, spec.max_subdivisions / 2);
    let breaks: Vec<f64> = (0..=panels)
        .map(|i| q_max * i as f64 / panels as f64)
        .collect();
    let out = integrate_panels(&f, &breaks, &spec.inner())?;
    Ok(out.value)
}

/// Residue-only estimate of the lineshape integral: for x < 0 the pole
/// at k = (ω_res − iγ/2)/c contributes −(2πi/c)·√k₀·exp(i(ω_res − iγ/2)x/c);
/// for x > 0 nothing.
pub fn lineshape_pole_approximation(x: f64, omega_res: f64, gamma: f64, c: f64) -> Complex64 {
    if x > 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let k0 = omega_res / c;
    let pole = Complex64::new(omega_res, -0.5 * gamma) / c;
    Complex64::new(0.0, -2.0 * PI / c) * k0.sqrt() * (Complex64::i() * pole * x).exp()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineshapeResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub pole_approximation: Complex64,
}

impl LineshapeResult {
    /// |value − pole| / |pole|, or |value| when the pole term is zero.
    pub fn pole_deviation(&self) -> f64 {
        let p = self.pole_approximation.norm();
        let d = (self.value - self.pole_approximation).norm();
        if p > 0.0 {
            d / p
        } else {
            d
        }
    }
}

/// ∫₀^∞ dk √k₀·exp(ikx)/(ck − ω_res + iγ/2), with the slowly varying √k
/// frozen at the resonance k₀ = ω_res/c. `x` plays the role of ρ − ct.
///
/// [0, K] is integrated adaptively with half-period panels and extra
/// breakpoints around the resonance; the tail beyond K is summed panel by
/// panel and extrapolated with the epsilon algorithm.
pub fn photon_lineshape_integral(
    x: f64,
    omega_res: f64,
    gamma: f64,
    c: f64,
    spec: &QuadratureSpec,
) -> Result<LineshapeResult> {
    spec.validate()?;
    if !(omega_res > 0.0 && c > 0.0) {
        return Err(Error::invalid("resonance frequency and c must be > 0"));
    }
    if !(gamma > 0.0) || gamma / omega_res > 1e-2 {
        return Err(Error::invalid(format!(
            "need 0 < gamma/omega_res <= 1e-2, got {}",
            gamma / omega_res
        )));
    }
    if x == 0.0 || !x.is_finite() {
        return Err(Error::Divergence(
            "the k-integral diverges logarithmically at x = 0".into(),
        ));
    }
    let k0 = omega_res / c;
    let sqrt_k0 = k0.sqrt();
    let f = move |k: f64| {
        let phase = Complex64::from_polar(1.0, k * x);
        phase / Complex64::new(c * k - omega_res, 0.5 * gamma)
    };

    let half_period = PI / x.abs();
    let line_width = gamma / c;
    let n_near = ((2.0 * k0 / half_period).ceil() as usize).max(1);
    let k_split = n_near as f64 * half_period;
    let mut breaks: Vec<f64> = (0..=n_near).map(|i| i as f64 * half_period).collect();
    for j in [-20.0, -5.0, -1.0, 0.0, 1.0, 5.0, 20.0] {
        let b = k0 + j * line_width;
        if b > 0.0 && b < k_split {
            breaks.push(b);
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    // Outside the cone the result is far below the residue scale 2π/c, so
    // accuracy is measured against that scale rather than the result.
    let tol = spec.inner();
    let floor = tol.rel * 2.0 * PI / c;
    let near_tol = Tolerance {
        abs: floor,
        max_intervals: tol.max_intervals.max(4 * breaks.len()),
        ..tol
    };
    let near = integrate_panels(&f, &breaks, &near_tol)?;

    // Tail: one panel per half period, accelerated.
    let mut partial = Vec::new();
    let mut running = Complex64::new(0.0, 0.0);
    let mut tail = Complex64::new(0.0, 0.0);
    let mut tail_err = f64::INFINITY;
    let target = floor.max(tol.rel * near.value.norm());
    const MAX_TAIL_PANELS: usize = 400;
    for j in 0..MAX_TAIL_PANELS {
        let a = k_split + j as f64 * half_period;
        let b = a + half_period;
        let (v, e) = gk21(&f, a, b);
        let v = if e > 1e-3 * target {
            integrate(
                &f,
                a,
                b,
                &Tolerance {
                    abs: 1e-3 * target,
                    rel: 0.0,
                    max_intervals: 64,
                },
            )?
            .value
        } else {
            v
        };
        running += v;
        partial.push(running);
        if partial.len() >= 8 {
            let window = &partial[partial.len().saturating_sub(40)..];
            let (est, err) = wynn_epsilon(window);
            tail = est;
            tail_err = err;
            if err <= target {
                break;
            }
        }
    }
    let error_estimate = near.error + tail_err;
    let value = (near.value + tail) * sqrt_k0;
    if !(tail_err <= target * 10.0) {
        return Err(Error::Convergence {
            what: "oscillatory tail of the lineshape integral".into(),
            achieved: tail_err,
            requested: target,
        });
    }
    Ok(LineshapeResult {
        value,
        error_estimate: error_estimate * sqrt_k0,
        pole_approximation: lineshape_pole_approximation(x, omega_res, gamma, c),
    })
}

/// ∫ density_rel dV over ρ ∈ (0, ct] and the full solid angle, as a nested
/// quadrature over ρ and θ′ (the azimuth contributes 2π).
pub fn normalization_rel(t: f64, params: &PhysicalParams, spec: &QuadratureSpec) -> Result<f64> {
    spec.validate()?;
    if !(t > 0.0) {
        return Err(Error::invalid(format!("t must be > 0, got {t}")));
    }
    let tol = spec.inner();
    let angular = |rho: f64| -> Result<f64> {
        let g = |theta: f64| {
            let d = density_rel(rho, theta, t, params).unwrap_or(f64::NAN);
            Complex64::new(2.0 * PI * theta.sin() * d * rho * rho, 0.0)
        };
        Ok(integrate(&g, 0.0, PI, &tol)?.value.re)
    };
    let outer = |rho: f64| Complex64::new(angular(rho).unwrap_or(f64::NAN), 0.0);
    let out = integrate(&outer, 0.0, params.c() * t, &tol)?;
    Ok(out.value.re)
}

/// ∫ d³R density_cm(R, ρ, t) as a radial quadrature.
pub fn normalization_cm(
    rho: f64,
    t: f64,
    params: &PhysicalParams,
    spec: &QuadratureSpec,
) -> Result<f64> {
    spec.validate()?;
    if !(rho >= 0.0 && t >= 0.0) {
        return Err(Error::invalid("need rho >= 0 and t >= 0"));
    }
    let a = width(rho, t, params);
    let r_max = a * gaussian_truncation(2.0, spec.envelope_floor);
    let f = |r: f64| {
        let d = density_cm(&Vec3::new(0.0, 0.0, r), rho, t, params).unwrap_or(f64::NAN);
        Complex64::new(4.0 * PI * r * r * d, 0.0)
    };
    let out = integrate_panels(&f, &[0.0, a, 2.0 * a, r_max], &spec.inner())?;
    Ok(out.value.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn truncation_envelope_below_floor() {
        for a in [0.2, 1.0, 5.0] {
            let q = gaussian_truncation(a, 1e-18);
            let env = |q: f64| q * q * (-0.5 * a * q * q).exp();
            let peak = env((2.0 / a).sqrt());
            assert!(env(q) <= 1.0001e-18 * peak);
            assert!(env(0.95 * q) > 1e-18 * peak);
        }
    }

    #[test]
    fn real_width_at_origin() {
        let v = complex_gaussian_integral(
            Complex64::new(1.0, 0.0),
            &Vec3::zeros(),
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert_relative_eq!(v.re, (2.0 * PI).powf(1.5), max_relative = 1e-8);
        assert_relative_eq!(v.re, 15.749_609_9, max_relative = 1e-8);
        assert!(v.im.abs() < 1e-12);
    }

    #[test]
    fn complex_width_matches_closed_form() {
        let w = Complex64::new(1.0, 1.0);
        let r = Vec3::new(1.0, 0.0, 0.0);
        let v = complex_gaussian_integral(w, &r, &QuadratureSpec::default()).unwrap();
        let exact = gaussian_closed_form(w, &r);
        assert!((v - exact).norm() <= 1e-8 * exact.norm());
    }

    #[test]
    fn non_positive_width_diverges() {
        let spec = QuadratureSpec::default();
        for w in [Complex64::new(-1.0, 0.0), Complex64::new(0.0, 2.0)] {
            assert!(matches!(
                complex_gaussian_integral(w, &Vec3::zeros(), &spec),
                Err(Error::Divergence(_))
            ));
        }
    }

    /// Independent check of the radial reduction: a plain tensor-product
    /// Kronrod rule over a cube in q-space.
    #[test]
    #[allow(clippy::excessive_precision)]
    fn radial_reduction_agrees_with_cartesian_cubature() {
        const X: [f64; 11] = [
            0.995_657_163_025_808_1,
            0.973_906_528_517_171_7,
            0.930_157_491_355_708_2,
            0.865_063_366_688_984_5,
            0.780_817_726_586_416_9,
            0.679_409_568_299_024_4,
            0.562_757_134_668_604_7,
            0.433_395_394_129_247_2,
            0.294_392_862_701_460_2,
            0.148_874_338_981_631_2,
            0.0,
        ];
        const W: [f64; 11] = [
            0.011_694_638_867_371_874,
            0.032_558_162_307_964_727,
            0.054_755_896_574_351_996,
            0.075_039_674_810_919_953,
            0.093_125_454_583_697_606,
            0.109_387_158_802_297_642,
            0.123_491_976_262_065_851,
            0.134_709_217_311_473_326,
            0.142_775_938_577_060_081,
            0.147_739_104_901_338_491,
            0.149_445_554_002_916_906,
        ];
        let half = 9.0;
        let panels = 4;
        let mut nodes = Vec::new();
        for p in 0..panels {
            let a = -half + 2.0 * half * p as f64 / panels as f64;
            let b = a + 2.0 * half / panels as f64;
            let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
            for j in 0..11 {
                nodes.push((c - h * X[j], h * W[j]));
                if j < 10 {
                    nodes.push((c + h * X[j], h * W[j]));
                }
            }
        }
        for (w, r) in [
            (Complex64::new(1.0, 0.0), Vec3::new(1.0, 0.0, 0.0)),
            (Complex64::new(1.0, 0.5), Vec3::new(0.5, 0.3, -0.2)),
        ] {
            let mut sum = Complex64::new(0.0, 0.0);
            for &(x, wx) in &nodes {
                for &(y, wy) in &nodes {
                    for &(z, wz) in &nodes {
                        let q = Vec3::new(x, y, z);
                        let arg = Complex64::new(0.0, q.dot(&r)) - 0.5 * w * q.norm_squared();
                        sum += arg.exp() * (wx * wy * wz);
                    }
                }
            }
            let radial = complex_gaussian_integral(w, &r, &QuadratureSpec::default()).unwrap();
            assert!(
                (sum - radial).norm() < 1e-6 * radial.norm(),
                "{sum} vs {radial}"
            );
        }
    }

    #[test]
    fn lineshape_rejects_bad_inputs() {
        let spec = QuadratureSpec::default();
        assert!(photon_lineshape_integral(-1.0, 1.0, 0.1, 1.0, &spec).is_err());
        assert!(photon_lineshape_integral(-1.0, 1.0, 0.0, 1.0, &spec).is_err());
        assert!(matches!(
            photon_lineshape_integral(0.0, 1.0, 1e-3, 1.0, &spec),
            Err(Error::Divergence(_))
        ));
    }

    #[test]
    fn lineshape_near_pole_value() {
        let spec = QuadratureSpec::default();
        let g = 1e-2;
        let res = photon_lineshape_integral(-1.0 / g, 1.0, g, 1.0, &spec).unwrap();
        assert!(
            res.pole_deviation() < 0.05,
            "deviation {}",
            res.pole_deviation()
        );
    }

    #[test]
    fn density_normalizations() {
        let p = PhysicalParams::with_speed_of_light(1.0, 2.0, 1.0, 1.0, 10.0).unwrap();
        let spec = QuadratureSpec::default();
        let n = normalization_rel(0.5, &p, &spec).unwrap();
        assert!((n - (1.0 - (-0.5f64).exp())).abs() < 1e-6);
        assert!(normalization_rel(1e-9, &p, &spec).unwrap() < 1e-8);
        assert!(normalization_rel(0.0, &p, &spec).is_err());
        let cm = normalization_cm(0.7, 0.3, &p, &spec).unwrap();
        assert!((cm - 1.0).abs() < 1e-8);
    }

    #[test]
    fn spec_validation() {
        let bad = QuadratureSpec {
            rel_tolerance: 0.5,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
