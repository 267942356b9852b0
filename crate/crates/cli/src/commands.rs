use std::f64::consts::PI;

use clap::{ArgAction, Args, Subcommand, ValueEnum};
use lqvac_core::kinematics::{recoil_velocity, solve_photon_wavevector};
use lqvac_core::model::DEFAULT_LOW_ENERGY_THRESHOLD;
use lqvac_core::oracles::{
    complex_gaussian_integral, gaussian_closed_form, normalization_cm, normalization_rel,
    photon_lineshape_integral, QuadratureSpec,
};
use lqvac_core::oscillator::{exact_spectrum, overlap, solve_oscillator, GridSpec, MassSign};
use lqvac_core::vacuum::{
    casimir_force, casimir_reference, local_vacuum_energy, zpe_energy_density, CasimirConfig,
};
use lqvac_core::wavefunction::{
    width, DensityField, DensityKind, EvaluationPoint, WavefieldConfig,
};
use lqvac_core::zbw::{run_cycles, statistics, width_profile};
use lqvac_core::{derived_scales, Complex64, Error, PhysicalParams, Vec3};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::output::{Cell, Report, Table};

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Exact oscillator ladder ω₀(n + ½), n = 0..=N.
    Spectrum(SpectrumArgs),
    /// Finite-difference spectra for both mass signs.
    OscillatorSolve(OscillatorArgs),
    /// Rest-frame photon wavevector and recoil for given emission directions.
    Kinematics(KinematicsArgs),
    /// Centre-of-mass width a(ρ, t).
    Width(WidthArgs),
    /// Width sampled on a time grid through its minimum.
    WidthProfile(WidthProfileArgs),
    /// Relative, centre-of-mass or joint density on a (ρ, θ′) grid.
    Density(DensityArgs),
    /// Brute-force checks of the analytic integration steps.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Cut-off zero-point energy density and the local vacuum energy.
    Zpe(ZpeArgs),
    /// Regulated parallel-plate Casimir force.
    Casimir(CasimirArgs),
    /// Zitterbewegung emission/re-absorption walk.
    Zbw(ZbwArgs),
    /// Length and time scales derived from the model constants.
    Scales(ParamArgs),
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "oracle", rename_all = "kebab-case")]
pub enum OracleCommand {
    /// ∫d³q exp(−q²w/2 + iq·R) against its closed form.
    Gaussian(GaussianArgs),
    /// Resonant k-integral against its pole approximation.
    Lineshape(LineshapeArgs),
    /// Normalization of the relative or centre-of-mass density.
    Norm(NormArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ParamArgs {
    /// Particle mass.
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
    /// Oscillator frequency ω₀.
    #[arg(long, default_value_t = 0.01)]
    pub omega0: f64,
    /// Initial packet width.
    #[arg(long, default_value_t = 1.0)]
    pub a0: f64,
    /// Decay rate γ.
    #[arg(long, default_value_t = 1e-3)]
    pub gamma: f64,
    /// Speed of light.
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
}

impl ParamArgs {
    fn build(&self) -> Result<PhysicalParams, Error> {
        let p =
            PhysicalParams::with_speed_of_light(self.m, self.omega0, self.a0, self.gamma, self.c)?;
        if !p.is_low_energy(DEFAULT_LOW_ENERGY_THRESHOLD) {
            eprintln!(
                "warning: epsilon = {} is outside the low-energy regime (< {DEFAULT_LOW_ENERGY_THRESHOLD})",
                p.epsilon()
            );
        }
        Ok(p)
    }
}

#[derive(Args, Debug, Serialize)]
pub struct SpectrumArgs {
    #[arg(long, default_value_t = 1.0)]
    pub omega0: f64,
    /// Highest level index.
    #[arg(long, default_value_t = 4, allow_negative_numbers = true)]
    pub n: i64,
}

#[derive(Args, Debug, Serialize)]
pub struct OscillatorArgs {
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega0: f64,
    #[arg(long, default_value_t = lqvac_core::oscillator::DEFAULT_GRID_POINTS)]
    pub n_points: usize,
    /// Domain half width; defaults to 8 oscillator lengths.
    #[arg(long)]
    pub half_width: Option<f64>,
    /// Number of states of smallest |E|.
    #[arg(long, default_value_t = 4)]
    pub states: usize,
    /// Emit eigenvectors (one CSV record per grid node).
    #[arg(long)]
    pub vectors: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct KinematicsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub params: ParamArgs,
    /// Emission direction; normalized before use.
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [0.0, 0.0, 1.0])]
    pub direction: Vec<f64>,
    /// Use N quasi-uniform directions on the sphere instead of --direction.
    #[arg(long)]
    pub sphere: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
pub struct WidthArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub params: ParamArgs,
    #[arg(long)]
    pub rho: f64,
    #[arg(long)]
    pub t: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct WidthProfileArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 1.0)]
    pub rho: f64,
    /// End of the time grid; defaults to 3·(2ρ/c).
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long, default_value_t = 97)]
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Rel,
    Cm,
    Joint,
}

#[derive(Args, Debug, Serialize)]
pub struct DensityArgs {
    #[arg(value_enum)]
    pub kind: Kind,
    #[command(flatten)]
    #[serde(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 10.0)]
    pub t: f64,
    #[arg(long, default_value_t = 0.5)]
    pub rho_min: f64,
    #[arg(long, default_value_t = 5.0)]
    pub rho_max: f64,
    #[arg(long, default_value_t = 10)]
    pub n_rho: usize,
    /// θ′ nodes at π(j + ½)/n.
    #[arg(long, default_value_t = 5)]
    pub n_theta: usize,
    /// Particle position.
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [0.0, 0.0, 0.0])]
    pub r_at: Vec<f64>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct QuadArgs {
    #[arg(long, default_value_t = 1e-8)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = 20_000)]
    pub max_subdivisions: usize,
}

impl QuadArgs {
    fn spec(&self) -> QuadratureSpec {
        QuadratureSpec {
            rel_tolerance: self.rel_tol,
            max_subdivisions: self.max_subdivisions,
            ..QuadratureSpec::default()
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct GaussianArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub w_re: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub w_im: f64,
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [0.0, 0.0, 0.0])]
    pub r: Vec<f64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub quad: QuadArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct LineshapeArgs {
    /// Values of ρ − ct.
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [-1000.0, -2000.0, 1000.0])]
    pub x: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub omega_res: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub quad: QuadArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    Rel,
    Cm,
}

#[derive(Args, Debug, Serialize)]
pub struct NormArgs {
    #[arg(long, value_enum, default_value_t = NormKind::Rel)]
    pub kind: NormKind,
    #[command(flatten)]
    #[serde(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 1000.0)]
    pub t: f64,
    /// Relative separation (centre-of-mass normalization only).
    #[arg(long, default_value_t = 1.0)]
    pub rho: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub quad: QuadArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct ZpeArgs {
    /// Frequency cut-off Ω.
    #[arg(long, default_value_t = 1.0)]
    pub cutoff: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Sets the default radius c/ω₀.
    #[arg(long, default_value_t = 0.01)]
    pub omega0: f64,
    /// Radius of the vacuum region; defaults to c/ω₀.
    #[arg(long)]
    pub radius: Option<f64>,
}

#[derive(Args, Debug, Serialize)]
pub struct CasimirArgs {
    /// Plate separation.
    #[arg(long, default_value_t = 1.0)]
    pub d: f64,
    /// Regulator scale Λ.
    #[arg(long, default_value_t = 100.0)]
    pub cutoff: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Mode-sum truncation tolerance relative to the first term.
    #[arg(long, default_value_t = 1e-32)]
    pub quad_tol: f64,
    #[arg(long, default_value_t = 50_000_000)]
    pub max_terms: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ZbwMode {
    Run,
    Stats,
}

#[derive(Args, Debug, Serialize)]
pub struct ZbwArgs {
    #[arg(value_enum)]
    pub mode: ZbwMode,
    #[command(flatten)]
    #[serde(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 1000)]
    pub cycles: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn vec3(v: &[f64], what: &str) -> Result<Vec3, Error> {
    match v {
        [x, y, z] => Ok(Vec3::new(*x, *y, *z)),
        _ => Err(Error::InvalidArgument(format!(
            "{what} needs three components"
        ))),
    }
}

fn inputs(cmd: &Command) -> Value {
    serde_json::to_value(cmd).unwrap_or(Value::Null)
}

pub fn run(cmd: &Command) -> Result<Report, Error> {
    let mut report = match cmd {
        Command::Spectrum(a) => spectrum(a),
        Command::OscillatorSolve(a) => oscillator(a),
        Command::Kinematics(a) => kinematics(a),
        Command::Width(a) => width_cmd(a),
        Command::WidthProfile(a) => profile(a),
        Command::Density(a) => density(a),
        Command::Oracle(OracleCommand::Gaussian(a)) => gaussian(a),
        Command::Oracle(OracleCommand::Lineshape(a)) => lineshape(a),
        Command::Oracle(OracleCommand::Norm(a)) => norm(a),
        Command::Zpe(a) => zpe(a),
        Command::Casimir(a) => casimir(a),
        Command::Zbw(a) => zbw(a),
        Command::Scales(a) => scales(a),
    }?;
    report.inputs = inputs(cmd);
    Ok(report)
}

fn report(result: Value, diagnostics: Value, table: Table) -> Result<Report, Error> {
    Ok(Report {
        inputs: Value::Null,
        result,
        diagnostics,
        table,
    })
}

fn spectrum(a: &SpectrumArgs) -> Result<Report, Error> {
    if !(a.omega0 > 0.0) {
        return Err(Error::InvalidArgument("omega0 must be > 0".into()));
    }
    let levels = exact_spectrum(a.omega0, a.n)?;
    let mut t = Table::new(&["n", "energy"]);
    for (i, e) in levels.iter().enumerate() {
        t.push(vec![i.into(), (*e).into()]);
    }
    report(json!(levels), json!({"levels": levels.len()}), t)
}

fn oscillator(a: &OscillatorArgs) -> Result<Report, Error> {
    let grid = match a.half_width {
        Some(hw) => GridSpec::new(a.n_points, hw)?,
        None => GridSpec::new(
            a.n_points,
            lqvac_core::oscillator::DEFAULT_HALF_WIDTH_OSC_LENGTHS / (a.m * a.omega0).sqrt(),
        )?,
    };
    let (plus, minus) = rayon::join(
        || solve_oscillator(a.m, a.omega0, &grid, MassSign::Positive, a.states),
        || solve_oscillator(a.m, a.omega0, &grid, MassSign::Negative, a.states),
    );
    let (plus, minus) = (plus?, minus?);
    let exact = exact_spectrum(a.omega0, a.states as i64 - 1)?;
    let overlaps: Vec<f64> = plus
        .eigenvectors
        .iter()
        .zip(&minus.eigenvectors)
        .map(|(p, m)| overlap(p, m))
        .collect();
    let mirror: Vec<f64> = plus
        .eigenvalues
        .iter()
        .zip(&minus.eigenvalues)
        .map(|(p, m)| (p + m).abs() / p.abs())
        .collect();
    let result = json!({
        "positive": plus.eigenvalues,
        "negative": minus.eigenvalues,
        "exact": exact,
        "overlaps": overlaps,
    });
    let diagnostics = json!({
        "spacing": grid.spacing(),
        "half_width": grid.half_width(),
        "residuals_positive": plus.residuals,
        "residuals_negative": minus.residuals,
        "mirror_relative_mismatch": mirror,
    });
    let table = if a.vectors {
        let mut cols = vec!["x".to_string()];
        for i in 0..a.states {
            cols.push(format!("psi_plus_{i}"));
        }
        for i in 0..a.states {
            cols.push(format!("psi_minus_{i}"));
        }
        let mut t = Table {
            columns: cols,
            rows: Vec::new(),
        };
        for (j, x) in grid.nodes().into_iter().enumerate() {
            let mut row = vec![Cell::Num(x)];
            row.extend(plus.eigenvectors.iter().map(|v| Cell::Num(v[j])));
            row.extend(minus.eigenvectors.iter().map(|v| Cell::Num(v[j])));
            t.push(row);
        }
        t
    } else {
        let mut t = Table::new(&["n", "exact", "positive", "negative", "overlap"]);
        for i in 0..a.states {
            t.push(vec![
                i.into(),
                exact[i].into(),
                plus.eigenvalues[i].into(),
                minus.eigenvalues[i].into(),
                overlaps[i].into(),
            ]);
        }
        t
    };
    let mut out = report(result, diagnostics, table)?;
    if a.vectors {
        out.result["vectors_positive"] = json!(plus.eigenvectors);
        out.result["vectors_negative"] = json!(minus.eigenvectors);
        out.result["nodes"] = json!(grid.nodes());
    }
    Ok(out)
}

fn fibonacci_sphere(n: usize) -> Vec<Vec3> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let s = (1.0 - z * z).sqrt();
            let phi = golden * i as f64;
            Vec3::new(s * phi.cos(), s * phi.sin(), z).normalize()
        })
        .collect()
}

fn kinematics(a: &KinematicsArgs) -> Result<Report, Error> {
    let p = a.params.build()?;
    let dirs = match a.sphere {
        Some(0) => {
            return Err(Error::InvalidArgument(
                "--sphere needs at least one direction".into(),
            ))
        }
        Some(n) => fibonacci_sphere(n),
        None => {
            let d = vec3(&a.direction, "--direction")?;
            if !(d.norm() > 0.0) {
                return Err(Error::InvalidArgument("direction must be non-zero".into()));
            }
            vec![d.normalize()]
        }
    };
    let mut t = Table::new(&[
        "dir_x",
        "dir_y",
        "dir_z",
        "k_x",
        "k_y",
        "k_z",
        "q_x",
        "q_y",
        "q_z",
        "omega",
        "q_longitudinal",
        "v_x",
        "v_y",
        "v_z",
        "energy_residual",
        "momentum_residual",
    ]);
    let mut rows = Vec::new();
    let (mut max_e, mut max_p, mut all_same) = (0.0_f64, 0.0_f64, true);
    for d in &dirs {
        let k = solve_photon_wavevector(&p, d)?;
        let v = recoil_velocity(&k.q, p.m());
        let e_res = k.energy_residual(&p);
        let p_res = k.momentum_residual().amax();
        max_e = max_e.max(e_res.abs() / k.omega);
        max_p = max_p.max(p_res);
        all_same &= v.dot(&k.k) > 0.0;
        t.push(vec![
            d.x.into(),
            d.y.into(),
            d.z.into(),
            k.k.x.into(),
            k.k.y.into(),
            k.k.z.into(),
            k.q.x.into(),
            k.q.y.into(),
            k.q.z.into(),
            k.omega.into(),
            k.q_longitudinal.into(),
            v.x.into(),
            v.y.into(),
            v.z.into(),
            e_res.into(),
            p_res.into(),
        ]);
        rows.push(json!({
            "direction": [d.x, d.y, d.z],
            "k": [k.k.x, k.k.y, k.k.z],
            "q": [k.q.x, k.q.y, k.q.z],
            "p": [k.p.x, k.p.y, k.p.z],
            "omega": k.omega,
            "q_longitudinal": k.q_longitudinal,
            "recoil_velocity": [v.x, v.y, v.z],
        }));
    }
    let diagnostics = json!({
        "epsilon": p.epsilon(),
        "max_relative_energy_residual": max_e,
        "max_momentum_residual": max_p,
        "recoil_along_photon": all_same,
    });
    report(json!(rows), diagnostics, t)
}

fn width_cmd(a: &WidthArgs) -> Result<Report, Error> {
    let p = a.params.build()?;
    if !(a.rho >= 0.0 && a.t >= 0.0) {
        return Err(Error::InvalidArgument("need rho >= 0 and t >= 0".into()));
    }
    let w = width(a.rho, a.t, &p);
    let mut t = Table::new(&["rho", "t", "width"]);
    t.push(vec![a.rho.into(), a.t.into(), w.into()]);
    let diagnostics = json!({"minimum_time": 2.0 * a.rho / p.c(), "a0": p.a0()});
    report(json!(w), diagnostics, t)
}

fn profile(a: &WidthProfileArgs) -> Result<Report, Error> {
    let p = a.params.build()?;
    let t_max = a.t_max.unwrap_or(6.0 * a.rho / p.c());
    let prof = width_profile(a.rho, t_max, a.samples, &p)?;
    let mut t = Table::new(&["t", "width"]);
    for (ti, wi) in prof.times.iter().zip(&prof.widths) {
        t.push(vec![(*ti).into(), (*wi).into()]);
    }
    let result = json!({
        "times": prof.times,
        "widths": prof.widths,
        "jump_at_zero": prof.jump_at_zero,
        "minimum_time": prof.minimum_time,
        "minimum_width": prof.minimum_width,
    });
    let diagnostics = json!({
        "turning_index": prof.turning_index,
        "down_then_up": prof.is_down_then_up(),
        "jump_identity_rhs": 4.0 * a.rho * a.rho / (p.c() * p.c() * p.m() * p.m() * p.a0() * p.a0()),
        "jump_identity_lhs": prof.widths[0] * prof.widths[0] - p.a0() * p.a0(),
    });
    report(result, diagnostics, t)
}

fn density(a: &DensityArgs) -> Result<Report, Error> {
    let p = a.params.build()?;
    if !(a.rho_min > 0.0 && a.rho_max >= a.rho_min) {
        return Err(Error::InvalidArgument("need 0 < rho-min <= rho-max".into()));
    }
    if a.n_rho == 0 || a.n_theta == 0 {
        return Err(Error::InvalidArgument("grid sizes must be >= 1".into()));
    }
    let r_at = vec3(&a.r_at, "--r-at")?;
    let mut grid = Vec::with_capacity(a.n_rho * a.n_theta);
    for i in 0..a.n_rho {
        let rho = if a.n_rho == 1 {
            a.rho_min
        } else {
            a.rho_min + (a.rho_max - a.rho_min) * i as f64 / (a.n_rho - 1) as f64
        };
        for j in 0..a.n_theta {
            let th = PI * (j as f64 + 0.5) / a.n_theta as f64;
            let r_ph = r_at + Vec3::new(th.sin(), 0.0, th.cos()) * rho;
            grid.push((rho, th, EvaluationPoint::new(r_at, r_ph, a.t)?));
        }
    }
    let kind = match a.kind {
        Kind::Rel => DensityKind::Relative,
        Kind::Cm => DensityKind::CenterOfMass,
        Kind::Joint => DensityKind::Joint,
    };
    let points: Vec<EvaluationPoint> = grid.iter().map(|g| g.2).collect();
    let field = DensityField::evaluate(&points, kind, &WavefieldConfig::new(p))?;
    let mut t = Table::new(&["rho", "theta_prime", "t", "value"]);
    for ((rho, th, _), v) in grid.iter().zip(&field.values) {
        t.push(vec![(*rho).into(), (*th).into(), a.t.into(), (*v).into()]);
    }
    let result = json!({
        "rho": grid.iter().map(|g| g.0).collect::<Vec<_>>(),
        "theta_prime": grid.iter().map(|g| g.1).collect::<Vec<_>>(),
        "values": field.values,
    });
    report(
        result,
        json!({"points": points.len(), "light_cone_radius": p.c() * a.t}),
        t,
    )
}

fn gaussian(a: &GaussianArgs) -> Result<Report, Error> {
    let w = Complex64::new(a.w_re, a.w_im);
    let r = vec3(&a.r, "--r")?;
    let spec = a.quad.spec();
    let num = complex_gaussian_integral(w, &r, &spec)?;
    let exact = gaussian_closed_form(w, &r);
    let rel = (num - exact).norm() / exact.norm();
    let mut t = Table::new(&[
        "numeric_re",
        "numeric_im",
        "closed_re",
        "closed_im",
        "relative_error",
    ]);
    t.push(vec![
        num.re.into(),
        num.im.into(),
        exact.re.into(),
        exact.im.into(),
        rel.into(),
    ]);
    let result = json!({
        "numeric": [num.re, num.im],
        "closed_form": [exact.re, exact.im],
        "relative_error": rel,
    });
    report(
        result,
        json!({"within_tolerance": rel <= a.quad.rel_tol}),
        t,
    )
}

fn lineshape(a: &LineshapeArgs) -> Result<Report, Error> {
    let spec = a.quad.spec();
    let outs =
        a.x.par_iter()
            .map(|&x| photon_lineshape_integral(x, a.omega_res, a.gamma, a.c, &spec))
            .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(&[
        "x",
        "value_re",
        "value_im",
        "modulus",
        "pole_re",
        "pole_im",
        "pole_modulus",
        "pole_deviation",
        "error_estimate",
    ]);
    let mut rows = Vec::new();
    for (x, o) in a.x.iter().zip(&outs) {
        t.push(vec![
            (*x).into(),
            o.value.re.into(),
            o.value.im.into(),
            o.value.norm().into(),
            o.pole_approximation.re.into(),
            o.pole_approximation.im.into(),
            o.pole_approximation.norm().into(),
            o.pole_deviation().into(),
            o.error_estimate.into(),
        ]);
        rows.push(json!({
            "x": x,
            "value": [o.value.re, o.value.im],
            "modulus": o.value.norm(),
            "pole": [o.pole_approximation.re, o.pole_approximation.im],
            "pole_deviation": o.pole_deviation(),
            "error_estimate": o.error_estimate,
        }));
    }
    report(
        json!(rows),
        json!({"gamma_over_omega": a.gamma / a.omega_res}),
        t,
    )
}

fn norm(a: &NormArgs) -> Result<Report, Error> {
    let p = a.params.build()?;
    let spec = a.quad.spec();
    let (value, expected) = match a.kind {
        NormKind::Rel => (
            normalization_rel(a.t, &p, &spec)?,
            -(-p.gamma() * a.t).exp_m1(),
        ),
        NormKind::Cm => (normalization_cm(a.rho, a.t, &p, &spec)?, 1.0),
    };
    let mut t = Table::new(&["value", "expected", "deviation"]);
    t.push(vec![
        value.into(),
        expected.into(),
        (value - expected).into(),
    ]);
    report(
        json!({"value": value, "expected": expected, "deviation": value - expected}),
        json!({"gamma_t": p.gamma() * a.t}),
        t,
    )
}

fn zpe(a: &ZpeArgs) -> Result<Report, Error> {
    if !(a.omega0 > 0.0) {
        return Err(Error::InvalidArgument("omega0 must be > 0".into()));
    }
    let radius = a.radius.unwrap_or(a.c / a.omega0);
    if !(radius >= 0.0) {
        return Err(Error::InvalidArgument("radius must be >= 0".into()));
    }
    let density = zpe_energy_density(a.cutoff, a.c)?;
    let local = local_vacuum_energy(a.cutoff, a.c, radius)?;
    let mut t = Table::new(&["cutoff", "energy_density", "radius", "local_energy"]);
    t.push(vec![
        a.cutoff.into(),
        density.into(),
        radius.into(),
        local.into(),
    ]);
    report(
        json!({"energy_density": density, "radius": radius, "local_energy": local}),
        json!({}),
        t,
    )
}

fn casimir(a: &CasimirArgs) -> Result<Report, Error> {
    let cfg = CasimirConfig {
        separation: a.d,
        cutoff: a.cutoff,
        c: a.c,
        quad_tolerance: a.quad_tol,
        max_terms: a.max_terms,
    };
    let r = casimir_force(&cfg)?;
    // The reference is for c = 1; the force is linear in c.
    let reference = casimir_reference(a.d) * a.c;
    let dev = r.force / reference - 1.0;
    let mut t = Table::new(&[
        "d",
        "cutoff",
        "force",
        "reference",
        "relative_deviation",
        "energy",
    ]);
    t.push(vec![
        a.d.into(),
        a.cutoff.into(),
        r.force.into(),
        reference.into(),
        dev.into(),
        r.energy.into(),
    ]);
    report(
        json!({"force": r.force, "energy": r.energy, "reference": reference, "relative_deviation": dev}),
        json!({"n_terms": r.n_terms, "truncation_bound": r.truncation_bound, "step": r.step}),
        t,
    )
}

fn zbw(a: &ZbwArgs) -> Result<Report, Error> {
    let p = a.params.build()?;
    let traj = run_cycles(&p, a.cycles, a.seed)?;
    let s = statistics(&traj)?;
    let compton = derived_scales(&p).compton_wavelength;
    let summary = json!({
        "n_cycles": s.n_cycles,
        "mean_displacement": [s.mean_displacement.x, s.mean_displacement.y, s.mean_displacement.z],
        "rms_displacement": s.rms_displacement,
        "step_mean": s.step_mean,
        "step_min": s.step_min,
        "step_max": s.step_max,
        "net_displacement": s.net_displacement,
        "mean_cos2": s.mean_cos2,
        "max_pair_momentum_residual": s.max_pair_momentum_residual,
        "mean_within_band": s.mean_within_band,
        "step_over_compton": s.step_mean / compton,
    });
    match a.mode {
        ZbwMode::Stats => {
            let mut t = Table::new(&[
                "n_cycles",
                "mean_x",
                "mean_y",
                "mean_z",
                "rms_displacement",
                "step_mean",
                "step_min",
                "step_max",
                "net_displacement",
                "mean_cos2",
                "max_pair_momentum_residual",
                "mean_within_band",
            ]);
            let m = s.mean_displacement;
            t.push(vec![
                s.n_cycles.into(),
                m.x.into(),
                m.y.into(),
                m.z.into(),
                s.rms_displacement.into(),
                s.step_mean.into(),
                s.step_min.into(),
                s.step_max.into(),
                s.net_displacement.into(),
                s.mean_cos2.into(),
                s.max_pair_momentum_residual.into(),
                s.mean_within_band.into(),
            ]);
            report(summary, json!({"compton_wavelength": compton}), t)
        }
        ZbwMode::Run => {
            let mut t = Table::new(&[
                "cycle", "dir_x", "dir_y", "dir_z", "dx", "dy", "dz", "x", "y", "z",
            ]);
            let mut cycles = Vec::with_capacity(traj.pairs.len());
            for (i, (pair, pos)) in traj
                .pairs
                .iter()
                .zip(&traj.cumulative_positions)
                .enumerate()
            {
                let (d, dx) = (pair.photon_direction, pair.cycle_displacement);
                t.push(vec![
                    i.into(),
                    d.x.into(),
                    d.y.into(),
                    d.z.into(),
                    dx.x.into(),
                    dx.y.into(),
                    dx.z.into(),
                    pos.x.into(),
                    pos.y.into(),
                    pos.z.into(),
                ]);
                cycles.push(json!({
                    "photon_direction": [d.x, d.y, d.z],
                    "displacement": [dx.x, dx.y, dx.z],
                    "position": [pos.x, pos.y, pos.z],
                }));
            }
            report(json!({"cycles": cycles}), summary, t)
        }
    }
}

fn scales(a: &ParamArgs) -> Result<Report, Error> {
    let p = a.build()?;
    let s = derived_scales(&p);
    let mut t = Table::new(&[
        "compton_wavelength",
        "photon_wavelength",
        "lifetime",
        "localization_radius",
        "epsilon",
        "low_energy",
    ]);
    let low = p.is_low_energy(DEFAULT_LOW_ENERGY_THRESHOLD);
    t.push(vec![
        s.compton_wavelength.into(),
        s.photon_wavelength.into(),
        s.lifetime.into(),
        s.localization_radius.into(),
        s.epsilon.into(),
        low.into(),
    ]);
    report(
        json!({
            "compton_wavelength": s.compton_wavelength,
            "photon_wavelength": s.photon_wavelength,
            "lifetime": s.lifetime,
            "localization_radius": s.localization_radius,
            "epsilon": s.epsilon,
        }),
        json!({"low_energy": low, "threshold": DEFAULT_LOW_ENERGY_THRESHOLD}),
        t,
    )
}
