use thiserror::Error;

/// Errors raised by the checkers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rational literal `{0}`")]
    ParseRational(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("invalid spin system: {0}")]
    InvalidSystem(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("polynomial is degenerate: {0}")]
    Degenerate(String),

    #[error("enumeration cap exceeded: {states} states > cap {cap}")]
    CapExceeded { states: u128, cap: u64 },

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("root finder did not converge after {0} iterations")]
    NoConvergence(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
