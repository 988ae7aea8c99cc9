use thiserror::Error;

/// Which of the two polarization preconditions a root subset violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolarizationProperty {
    /// Closure under addition inside the root system.
    A,
    /// No root together with its negative.
    B,
}

impl std::fmt::Display for PolarizationProperty {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PolarizationProperty::A => write!(f, "A (additive closure)"),
            PolarizationProperty::B => write!(f, "B (no opposite pairs)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported Lie type {series}{rank}")]
    UnsupportedType { series: String, rank: usize },
    #[error("algebra construction failed: {0}")]
    ConstructionFailure(String),
    #[error("tensors belong to different algebras ({0} vs {1})")]
    AlgebraMismatch(String, String),
    #[error("evaluation too close to a pole: {0}")]
    PoleProximity(String),
    #[error("series failed to converge: {0}")]
    ConvergenceFailure(String),
    #[error("invalid r-matrix spec: {0}")]
    SpecInvalid(String),
    #[error("analytic derivative unavailable: {0}")]
    ModeUnavailable(String),
    #[error("could not find a pole-free sample after {0} attempts")]
    SamplingExhausted(usize),
    #[error("roots do not sum to zero")]
    RootSumNonzero,
    #[error("invalid reductive subalgebra: {0}")]
    SubalgebraInvalid(String),
    #[error("closed-subset enumeration refused for rank {0} (limit is 4)")]
    TooLarge(usize),
    #[error("root subset violates property {0}")]
    PropertyViolated(PolarizationProperty),
    #[error("polarization search exhausted its iteration budget")]
    SearchExhausted,
    #[error("fixture cache: {0}")]
    Fixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
