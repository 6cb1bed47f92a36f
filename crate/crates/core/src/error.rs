use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(String),
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("{0} is out of range")]
    OutOfRange(String),
    #[error("the prime 2 is not supported here; cluster pictures are defined at odd primes only")]
    EvenPrime,
    #[error("curve is not normalized: 0 and 1 must both be roots")]
    NotNormalized,
    #[error("prime {p} is too small for genus {g}: need p > 2g")]
    PrimeTooSmall { p: String, g: usize },
    #[error("root lists have different sizes ({0} vs {1})")]
    GenusMismatch(usize, usize),
    #[error("value set is not closed under x -> 1-x, x -> 1/x (missing {0})")]
    NotClosed(String),
    #[error("the prime set must contain 2")]
    MissingEvenPrime,
    #[error("unsupported field descriptor: {0}")]
    UnsupportedField(String),
    #[error("not a constellation: {0}")]
    NotAConstellation(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("checkpoint error: {0}")]
    Checkpoint(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
