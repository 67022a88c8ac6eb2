use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("measures or sets live on different spaces")]
    SpaceMismatch,
    #[error("line measure and line set use different grid sizes ({0} vs {1})")]
    GridMismatch(usize, usize),
    #[error("the set family is empty")]
    EmptyFamily,
    #[error("{what} exceeds the supported size cap ({got} > {cap})")]
    SizeCap {
        what: &'static str,
        got: usize,
        cap: usize,
    },
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("measure is not absolutely continuous with respect to the reference measure")]
    NotAbsolutelyContinuous,
    #[error("operation requires a positive measure but the input is signed")]
    SignedInput,
    #[error("invalid construction: {0}")]
    Invalid(String),
    #[error("projection for outcome {0} is not idempotent")]
    NotIdempotent(usize),
    #[error("projection for outcome {0} is not Hermitian")]
    NotHermitian(usize),
    #[error("projections for outcomes {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("projections do not sum to the identity")]
    Incomplete,
    #[error("matrix is not normal")]
    NotNormal,
}

pub type Result<T> = std::result::Result<T, Error>;
