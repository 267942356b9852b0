//! Adaptive Gauss–Kronrod (10/21) quadrature for complex-valued integrands
//! and Wynn's epsilon algorithm for accelerating oscillatory panel sums.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// One 21-point Kronrod estimate on `[a, b]` with the embedded 10-point
/// Gauss difference as error estimate.
pub fn gk21<F>(f: &F, a: f64, b: f64) -> (Complex64, f64)
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    for j in 0..10 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    let value = kronrod * half;
    let err = ((kronrod - gauss) * half).norm();
    (value, err)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOutput {
    pub value: Complex64,
    pub error: f64,
    pub intervals: usize,
}

/// Tolerances for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Tolerance {
    pub fn relative(rel: f64) -> Self {
        Tolerance {
            abs: 0.0,
            rel,
            max_intervals: 2000,
        }
    }

    fn target(&self, value: Complex64) -> f64 {
        self.abs.max(self.rel * value.norm())
    }
}

/// Globally adaptive bisection: the interval with the largest error
/// estimate is split until the summed estimate meets the tolerance.
pub fn integrate<F>(f: &F, a: f64, b: f64, tol: &Tolerance) -> Result<QuadOutput>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    integrate_panels(f, &[a, b], tol)
}

/// Same as [`integrate`] but seeded with the given breakpoints.
pub fn integrate_panels<F>(f: &F, breakpoints: &[f64], tol: &Tolerance) -> Result<QuadOutput>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    if breakpoints.len() < 2 {
        return Err(Error::invalid("need at least two breakpoints"));
    }
    let mut pieces: Vec<(f64, f64, Complex64, f64)> = breakpoints
        .windows(2)
        .filter(|w| w[1] != w[0])
        .map(|w| {
            let (v, e) = gk21(f, w[0], w[1]);
            (w[0], w[1], v, e)
        })
        .collect();

    loop {
        // Fixed-order summation keeps results bitwise reproducible.
        let value: Complex64 = pieces.iter().map(|p| p.2).sum();
        let error: f64 = pieces.iter().map(|p| p.3).sum();
        if !value.is_finite() {
            return Err(Error::Numerical(
                "integrand produced a non-finite value".into(),
            ));
        }
        if error <= tol.target(value) {
            return Ok(QuadOutput {
                value,
                error,
                intervals: pieces.len(),
            });
        }
        if pieces.len() >= tol.max_intervals {
            return Err(Error::Convergence {
                what: "adaptive quadrature".into(),
                achieved: error,
                requested: tol.target(value),
            });
        }
        let worst = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let (a, b, _, _) = pieces[worst];
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            return Err(Error::Convergence {
                what: "adaptive quadrature (interval underflow)".into(),
                achieved: error,
                requested: tol.target(value),
            });
        }
        let (v1, e1) = gk21(f, a, mid);
        let (v2, e2) = gk21(f, mid, b);
        pieces[worst] = (a, mid, v1, e1);
        pieces.insert(worst + 1, (mid, b, v2, e2));
    }
}

/// Real-valued convenience wrapper around [`integrate`].
pub fn integrate_real<F>(f: F, a: f64, b: f64, tol: &Tolerance) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let g = |x: f64| Complex64::new(f(x), 0.0);
    let out = integrate(&g, a, b, tol)?;
    Ok((out.value.re, out.error))
}

/// Limit of a sequence of partial sums by Wynn's epsilon algorithm.
///
/// Returns the extrapolated limit and the difference between the last two
/// extrapolants as an error estimate.
pub fn wynn_epsilon(partial_sums: &[Complex64]) -> (Complex64, f64) {
    let n = partial_sums.len();
    if n == 0 {
        return (Complex64::new(0.0, 0.0), f64::INFINITY);
    }
    if n < 3 {
        let last = partial_sums[n - 1];
        let err = if n == 2 {
            (last - partial_sums[0]).norm()
        } else {
            f64::INFINITY
        };
        return (last, err);
    }
    // prev = ε_{k-1}, cur = ε_k columns.
    let mut prev = vec![Complex64::new(0.0, 0.0); n + 1];
    let mut cur: Vec<Complex64> = partial_sums.to_vec();
    let mut estimates: Vec<Complex64> = vec![cur[cur.len() - 1]];
    let mut k = 0;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let diff = cur[i + 1] - cur[i];
            let base = if k == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                prev[i + 1]
            };
            if diff.norm() == 0.0 {
                // Sequence already converged here; stop extending the table.
                next.clear();
                break;
            }
            next.push(base + diff.inv());
        }
        if next.is_empty() {
            break;
        }
        prev = cur;
        cur = next;
        k += 1;
        if k % 2 == 0 {
            estimates.push(cur[cur.len() - 1]);
        }
    }
    let m = estimates.len();
    let best = estimates[m - 1];
    let err = if m >= 2 {
        (best - estimates[m - 2]).norm()
    } else {
        f64::INFINITY
    };
    (best, err)
}
