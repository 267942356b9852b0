use approx::assert_relative_eq;
use lqvac_core::quadrature::{integrate_real, Tolerance};
use lqvac_core::vacuum::{
    casimir_force, casimir_reference, local_vacuum_energy, zpe_energy_density, CasimirConfig,
};
use std::f64::consts::PI;

#[test]
fn zpe_density_matches_spectral_quadrature() {
    for c in [1.0f64, 3.0] {
        for cut in [0.5, 1.0, 10.0] {
            let (num, _) = integrate_real(
                |w| w.powi(3) / (2.0 * PI * PI * c.powi(3)),
                0.0,
                cut,
                &Tolerance::relative(1e-14),
            )
            .unwrap();
            assert_relative_eq!(
                zpe_energy_density(cut, c).unwrap(),
                num,
                max_relative = 1e-10
            );
        }
    }
}

#[test]
fn local_energy_uses_sphere_volume() {
    let e = local_vacuum_energy(1.0, 1.0, 2.0).unwrap();
    assert_relative_eq!(
        e,
        zpe_energy_density(1.0, 1.0).unwrap() * 32.0 * PI / 3.0,
        max_relative = 1e-15
    );
}

#[test]
fn casimir_cutoff_independence() {
    let forces: Vec<f64> = [100.0, 300.0, 1000.0]
        .iter()
        .map(|&l| casimir_force(&CasimirConfig::new(1.0, l)).unwrap().force)
        .collect();
    let max = forces.iter().cloned().fold(f64::MIN, f64::max);
    let min = forces.iter().cloned().fold(f64::MAX, f64::min);
    assert!((max - min) / min.abs() < 1e-3, "{forces:?}");
    for f in &forces {
        assert!((f / casimir_reference(1.0) - 1.0).abs() < 1e-3);
    }
}

#[test]
fn casimir_inverse_fourth_power() {
    let f1 = casimir_force(&CasimirConfig::new(1.0, 100.0))
        .unwrap()
        .force;
    let f2 = casimir_force(&CasimirConfig::new(2.0, 100.0))
        .unwrap()
        .force;
    assert!((f2 / f1 * 16.0 - 1.0).abs() < 2e-3);
    assert!((f2 / casimir_reference(2.0) - 1.0).abs() < 1e-3);
}

#[test]
fn casimir_with_non_unit_c() {
    let mut cfg = CasimirConfig::new(1.0, 200.0);
    cfg.c = 2.0;
    let r = casimir_force(&cfg).unwrap();
    // The force scales linearly with c at fixed d.
    assert!((r.force / (2.0 * casimir_reference(1.0)) - 1.0).abs() < 1e-3);
    assert!(r.truncation_bound < 1e-6);
}
