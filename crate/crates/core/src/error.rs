use thiserror::Error;

/// Errors raised by field, polynomial and code operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid extension degree {0}")]
    InvalidDegree(u32),
    #[error("field too large: {0}")]
    FieldTooLarge(String),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("element code {code} out of range for field of order {q}")]
    ElementOutOfRange { code: u64, q: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("quadratic character is undefined in characteristic 2")]
    EvenCharacteristic,
    #[error("no primitive {n}-th root of unity in F_q or F_q^2 (q = {q})")]
    RootNotInQuadratic { n: u64, q: u64 },
    #[error("gcd({n}, {q}) != 1")]
    NotCoprime { n: u64, q: u64 },
    #[error("polynomial degree {degree} outside the allowed range: {reason}")]
    Degree { degree: i64, reason: String },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial must be monic with zero constant term")]
    NotNormalized,
    #[error("equal-degree splitting failed after {0} attempts")]
    SplittingFailed(u32),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("resource guard exceeded: {0}")]
    Guard(String),
}

pub type Result<T> = std::result::Result<T, Error>;
