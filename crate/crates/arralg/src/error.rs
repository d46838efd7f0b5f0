use thiserror::Error;

/// Errors surfaced by the library. Computations are exact, so every failure is
/// structural (bad input, violated precondition) or a budget limit, never a
/// numerical one.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("expected a homogeneous polynomial: {0}")]
    NotHomogeneous(String),
    #[error("expected a nonzero polynomial: {0}")]
    ZeroInput(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("operation requires a proper ideal: {0}")]
    UnitIdeal(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("stage '{stage}' exceeded its time budget")]
    Timeout { stage: String },
    #[error("retry budget exhausted: {0}")]
    BudgetExhausted(String),
}

pub type Result<T> = std::result::Result<T, Error>;
