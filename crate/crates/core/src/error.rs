use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("operation requires integer coefficients, got {0}")]
    WrongDomain(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("image is not a direct summand (invariant factor {0})")]
    NotASummand(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("graded objects disagree: {0}")]
    GradedMismatch(String),
    #[error("input is not acyclic: {0}")]
    NotAcyclic(String),
    #[error("sequence is not exact at cell {0}")]
    NotExact(String),
    #[error("endomorphism is not idempotent at degree {0}")]
    NotIdempotent(usize),
    #[error("map is not a split monomorphism at degree {0}")]
    NotMono(usize),
    #[error("functor is not homogeneous of degree {expected} (found {found})")]
    DegreeMismatch { expected: u32, found: String },
    #[error("functor does not preserve zero")]
    NotZeroPreserving,
    #[error("polynomial is not symmetric")]
    NotSymmetric,
    #[error("need at least {needed} variables, have {have}")]
    InsufficientVariables { needed: usize, have: usize },
    #[error("invalid input at {cell}: {message}")]
    Validation { cell: String, message: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown target {0}")]
    UnknownTarget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
