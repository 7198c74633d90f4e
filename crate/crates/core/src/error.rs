use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),
    #[error("inconsistent linear system (certificate: {certificate})")]
    InconsistentSystem { certificate: String },
    #[error("coproduct is not regular")]
    NotRegular,
    #[error("covering failure: {0}")]
    CoveringFailure(String),
    #[error("antipode does not reproduce the generalized inverse: {0}")]
    ReconstructionMismatch(String),
    #[error("no idempotent with the required ranges: {0}")]
    NoSuchIdempotent(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("solution not unique (solution space of dimension {dim})")]
    NotUnique { dim: usize },
    #[error("antipode is not bijective on the window")]
    NotBijective,
    #[error("factorization failure: {0}")]
    FactorizationFailure(String),
    #[error("pairing sides come from different groupoids")]
    GroupoidMismatch,
    #[error("dense window of dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
