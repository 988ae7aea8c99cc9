//! Dynamical classical r-matrices over finite-dimensional simple Lie algebras.
//!
//! The crate builds Chevalley bases from root data ([`lie`]), does tensor
//! algebra in `g⊗g` and `g⊗g⊗g` ([`tensor`]), evaluates the scalar
//! special functions the r-matrix coefficients need ([`special`]), and
//! implements the explicit r-matrix families together with the gauge
//! transformations acting on them ([`rmatrix`]). The [`verify`] module turns
//! the defining identities (the classical dynamical Yang-Baxter equation,
//! zero weight, unitarity, residues) into numeric residuals and reports;
//! [`combinatorics`] holds the root-subset tools the families are indexed by.

pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod lie;
pub mod rmatrix;
pub mod special;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
