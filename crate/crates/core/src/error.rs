use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("undefined for input: {0}")]
    Undefined(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("resource limit reached: {0}")]
    ResourceLimit(String),
    #[error("search bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("reduction modulo {p} is not squarefree")]
    NotSquarefree { p: u64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("truncation exhausted: {0}")]
    TruncationExhausted(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
