//! Positive- and negative-mass harmonic oscillator spectra.
//!
//! The negative-mass Hamiltonian is the global negation of the
//! positive-mass one, so both share eigenvectors and have mirrored
//! eigenvalues. The finite-difference solver here makes that checkable.

use crate::error::{Error, Result};
use crate::model::PhysicalParams;
use crate::tridiagonal::SymmetricTridiagonal;

pub const MIN_GRID_POINTS: usize = 16;
/// Default half width of the box, in oscillator lengths 1/√(mω₀).
pub const DEFAULT_HALF_WIDTH_OSC_LENGTHS: f64 = 8.0;
pub const DEFAULT_GRID_POINTS: usize = 2000;

/// Sign multiplying the whole oscillator Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MassSign {
    Positive,
    Negative,
}

impl MassSign {
    pub fn factor(self) -> f64 {
        match self {
            MassSign::Positive => 1.0,
            MassSign::Negative => -1.0,
        }
    }
}

impl TryFrom<i32> for MassSign {
    type Error = Error;

    fn try_from(v: i32) -> Result<Self> {
        match v {
            1 => Ok(MassSign::Positive),
            -1 => Ok(MassSign::Negative),
            _ => Err(Error::invalid(format!(
                "mass sign must be +1 or -1, got {v}"
            ))),
        }
    }
}

/// Uniform grid of interior nodes on [−halfWidth, halfWidth]; the wavefunction
/// is pinned to zero on the two boundary nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    n_points: usize,
    half_width: f64,
}

impl GridSpec {
    pub fn new(n_points: usize, half_width: f64) -> Result<Self> {
        if n_points < MIN_GRID_POINTS {
            return Err(Error::invalid(format!(
                "grid too coarse: {n_points} points, need at least {MIN_GRID_POINTS}"
            )));
        }
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::invalid(format!(
                "half width must be > 0, got {half_width}"
            )));
        }
        Ok(GridSpec {
            n_points,
            half_width,
        })
    }

    /// Default grid for an oscillator of the given mass and frequency.
    pub fn default_for(mass: f64, omega0: f64) -> Result<Self> {
        let osc_length = 1.0 / (mass * omega0).sqrt();
        Self::new(
            DEFAULT_GRID_POINTS,
            DEFAULT_HALF_WIDTH_OSC_LENGTHS * osc_length,
        )
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.n_points as f64 + 1.0)
    }

    pub fn node(&self, i: usize) -> f64 {
        // Symmetric about zero by construction; the middle node of an odd grid is exactly 0.
        0.5 * self.spacing() * ((2 * i + 1) as f64 - self.n_points as f64)
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.node(i)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    /// Ordered by increasing |E|.
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[n]` is the grid-sampled state belonging to `eigenvalues[n]`,
    /// unit discrete L² norm.
    pub eigenvectors: Vec<Vec<f64>>,
    /// `‖Hψ − Eψ‖` for each pair.
    pub residuals: Vec<f64>,
    pub grid: Option<GridSpec>,
}

/// E_n = ω₀(n + ½) for n = 0..=n_max.
pub fn exact_spectrum(omega0: f64, n_max: i64) -> Result<Vec<f64>> {
    if n_max < 0 {
        return Err(Error::invalid(format!("nMax must be >= 0, got {n_max}")));
    }
    Ok((0..=n_max).map(|n| omega0 * (n as f64 + 0.5)).collect())
}

/// Central-difference matrix of `sign·(p²/2m + mω₀²x²/2)` on `grid`.
pub fn discretize_oscillator(
    mass: f64,
    omega0: f64,
    grid: &GridSpec,
    sign: MassSign,
) -> Result<SymmetricTridiagonal> {
    if !(mass > 0.0 && omega0 > 0.0) {
        return Err(Error::invalid("mass and omega0 must be > 0"));
    }
    let h = grid.spacing();
    let s = sign.factor();
    let kinetic = 1.0 / (2.0 * mass * h * h);
    let diag = grid
        .nodes()
        .into_iter()
        .map(|x| s * (2.0 * kinetic + 0.5 * mass * omega0 * omega0 * x * x))
        .collect();
    let off = vec![s * -kinetic; grid.n_points() - 1];
    SymmetricTridiagonal::new(diag, off)
}

pub fn discretize_hamiltonian(
    params: &PhysicalParams,
    grid: &GridSpec,
    sign: MassSign,
) -> Result<SymmetricTridiagonal> {
    discretize_oscillator(params.m(), params.omega0(), grid, sign)
}

/// The `n_states` eigenpairs of smallest |E|.
pub fn solve_spectrum(matrix: &SymmetricTridiagonal, n_states: usize) -> Result<SpectrumResult> {
    let n = matrix.dim();
    if n_states == 0 || n_states > n {
        return Err(Error::invalid(format!(
            "nStates must be in 1..={n}, got {n_states}"
        )));
    }
    // Eigenvalues nearest zero sit around the number of negative ones.
    let negatives = matrix.count_below(0.0);
    let lo = negatives.saturating_sub(n_states);
    let hi = (negatives + n_states).min(n);
    let mut candidates: Vec<f64> = (lo..hi).map(|k| matrix.eigenvalue(k)).collect();
    candidates.sort_by(|a, b| a.abs().total_cmp(&b.abs()).then(a.total_cmp(b)));
    candidates.truncate(n_states);

    let scale = candidates
        .iter()
        .fold(0.0_f64, |m, e| m.max(e.abs()))
        .max(1.0);
    let mut eigenvectors = Vec::with_capacity(n_states);
    let mut residuals = Vec::with_capacity(n_states);
    for &e in &candidates {
        let (v, res) = matrix.eigenvector(e);
        if !(res <= 1e-8 * scale) {
            return Err(Error::Numerical(format!(
                "inverse iteration for eigenvalue {e} left residual {res:e} (dimension {n})"
            )));
        }
        eigenvectors.push(v);
        residuals.push(res);
    }
    Ok(SpectrumResult {
        eigenvalues: candidates,
        eigenvectors,
        residuals,
        grid: None,
    })
}

/// Builds and solves the oscillator on `grid` in one step.
pub fn solve_oscillator(
    mass: f64,
    omega0: f64,
    grid: &GridSpec,
    sign: MassSign,
    n_states: usize,
) -> Result<SpectrumResult> {
    let h = discretize_oscillator(mass, omega0, grid, sign)?;
    let mut out = solve_spectrum(&h, n_states)?;
    out.grid = Some(*grid);
    Ok(out)
}

/// |⟨a|b⟩| for unit vectors.
pub fn overlap(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>().abs()
}
