//! Localized quantum vacuum model.
//!
//! A particle bound in a harmonic well emits a photon while dropping from
//! its ground state into the mirrored negative-energy state, and re-absorbs
//! it one lifetime later. The modules cover each piece of that picture:
//!
//! * [`model`]: constants and derived length/time scales (ħ = 1).
//! * [`oscillator`]: exact and finite-difference spectra for ±m.
//! * [`kinematics`]: energy/momentum balance of the transition.
//! * [`wavefunction`]: photon modes, coefficients, the entangled amplitude
//!   and its factorized densities.
//! * [`oracles`]: brute-force quadrature checks of the closed forms.
//! * [`vacuum`]: zero-point energy density and the regulated Casimir force.
//! * [`zbw`]: width dynamics and the emission/re-absorption random walk.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod ddouble;
pub mod error;
pub mod kinematics;
pub mod model;
pub mod oracles;
pub mod oscillator;
pub mod quadrature;
pub mod tridiagonal;
pub mod vacuum;
pub mod wavefunction;
pub mod zbw;

pub use error::{Error, Result};
pub use kinematics::Vec3;
pub use model::{derived_scales, KinematicScales, PhysicalParams};
pub use num_complex::Complex64;
