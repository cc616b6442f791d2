//! Numerical toolkit for 1D Schrödinger operators with sharply localized
//! magnetic and electric potentials.
//!
//! The crate computes zero-energy resonances and half-bound states of
//! compactly supported potentials, the double-resonance circle of rank-two
//! perturbations, the point-interaction models that arise as shrinking
//! limits of such operators, and exact scattering data for both the
//! finite-width families and their zero-range limits. A small harness runs
//! convergence experiments comparing the two.
//!
//! Start with the `examples/` directory: each example is a runnable
//! demonstration of one capability. The `reslab` binary exposes the same
//! operations as subcommands for batch use.

pub mod cli;
pub mod config;
pub mod convergence;
pub mod eps_family;
pub mod halfbound;
pub mod ode;
pub mod point_interaction;
pub mod profile;
pub mod rank_two;

pub use num_complex::Complex64;
