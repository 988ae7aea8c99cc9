//! Numerical verification of the r-matrix identities.

pub mod affine;
pub mod axioms;
pub mod checks;
pub mod identities;
pub mod limits;
pub mod pair;
pub mod report;
pub mod residual;
pub mod sampling;

pub use axioms::{check_axioms, extract_residue, Residue};
pub use checks::verify_cdybe;
pub use report::{CheckResult, ControlResult, VerificationReport};
pub use residual::{cdybe_residual_constant, cdybe_residual_spectral, pair_cdybe_residual};
pub use sampling::{Sample, SamplePlan};
