use thiserror::Error;

/// Errors raised by the arithmetic engine and the algorithms built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("domain error: {0}")]
    Domain(String),

    /// The requested product needs a longer transform than the NTT primes support.
    #[error("NTT capacity exceeded: transform length {len} exceeds maximum {max}")]
    NttCapacity { len: u128, max: u128 },

    #[error("scale mismatch: operand has {found} fraction bits, context expects {expected}")]
    ScaleMismatch { expected: u64, found: u64 },

    #[error("precision error: {0}")]
    Precision(String),

    #[error("invalid formula: {0}")]
    InvalidFormula(String),

    #[error("unknown constant `{0}`")]
    UnknownConstant(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// An invariant that should be unreachable failed; signals an arithmetic bug.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
