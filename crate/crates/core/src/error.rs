use thiserror::Error;

use crate::parse::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("unsupported dimension {0} (expected 1..=4)")]
    UnsupportedDimension(usize),

    #[error("invalid modulus {0} (must be at least 2)")]
    InvalidModulus(u64),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("support violation: {0}")]
    SupportViolation(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("scheme synthesis exceeded {max_states} states")]
    StateExplosion { max_states: usize },

    #[error("scheme state exponent {exponent} exceeds support cap {cap}")]
    SupportCapExceeded { exponent: i64, cap: i64 },

    #[error("power has {terms} terms, above the cap of {cap}")]
    TermCap { terms: usize, cap: usize },

    #[error("invalid scheme: {0}")]
    InvalidScheme(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("oracle identity failed: {0}")]
    Oracle(String),
}
