//! Phase-space entropy of sampled wavefunctions.
//!
//! Amplitudes live on centered periodic grids in one or three dimensions and
//! move between position and frequency representations with a unitary FFT.
//! On top of that sit free-packet evolution under Schrödinger and Dirac
//! dispersion, exact two-level transition amplitudes, two-particle collisions,
//! hydrogen entropy budgets, discrete C/P/T checks on spinor fields, and the
//! classification of entropy traces.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dispersion;
pub mod entropy;
pub mod error;
pub mod grid;
pub mod hydrogen;
pub mod io;
pub mod qcurve;
pub mod quadrature;
pub mod symmetry;
pub mod twolevel;
pub mod twoparticle;

pub use error::{Error, Result};
