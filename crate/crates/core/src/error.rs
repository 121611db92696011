use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(
        "state is not a product state: separability defect {defect:e} exceeds tolerance {tol:e}"
    )]
    NotSeparable { defect: f64, tol: f64 },

    #[error("no sign assignment reproduces the state within tolerance {tol:e}")]
    SignAssignmentFailure { tol: f64 },

    #[error("state is not normalized: squared norm {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error("invalid mixture weights: {0}")]
    InvalidWeights(String),

    #[error("invalid event probabilities: {0}")]
    InvalidProbabilities(String),

    #[error("angle must be finite, got {0}")]
    NonFiniteAngle(f64),

    #[error("box size must be at least 1")]
    EmptyBox,

    #[error("at least one trial is required")]
    ZeroTrials,
}
