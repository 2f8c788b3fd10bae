use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BkError {
    #[error("not an odd prime: {0}")]
    NotPrime(u64),
    #[error("extension degree out of range: {0}")]
    DegreeTooLarge(String),
    #[error("truncated Laurent window overflow: {0}")]
    WindowOverflow(String),
    #[error("congruence violated: {0}")]
    BadCongruence(String),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("vectors are not periodic with period f")]
    NotPeriodic,
    #[error("operation requires a cuspidal ambient")]
    NotCuspidal,
    #[error("shape is not in P_tau")]
    NotInPTau,
    #[error("operation is undefined for scalar types")]
    ScalarType,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("invalid instance: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, BkError>;
