use std::fmt;

/// Errors raised by the library.
///
/// Everything except [`Error::Invariant`] is a domain error: the caller
/// supplied an input outside an operation's contract. `Invariant` means a
/// result failed its own self-check and points at a bug.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} must be nonzero")]
    Zero(&'static str),
    #[error("{name} = {value} is not a prime")]
    NotPrime { name: &'static str, value: String },
    #[error("{name} = {value} must be odd")]
    Even { name: &'static str, value: String },
    #[error("{name} = {value} must be squarefree")]
    NotSquarefree { name: &'static str, value: String },
    #[error("{0} and {1} are not coprime")]
    NotCoprime(String, String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("factorization workload exceeded: {0}")]
    WorkloadExceeded(String),
    #[error("p-adic operands have different primes ({0} and {1})")]
    PrimeMismatch(String, String),
    #[error("division by exact zero")]
    DivisionByZero,
    #[error("total loss of precision: result is zero to the known precision")]
    PrecisionLoss,
    #[error("Hensel hypothesis violated: {0}")]
    HenselHypothesis(String),
    #[error("{0} is not a unit")]
    NotUnit(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn not_prime(name: &'static str, value: impl fmt::Display) -> Self {
        Error::NotPrime { name, value: value.to_string() }
    }

    pub(crate) fn even(name: &'static str, value: impl fmt::Display) -> Self {
        Error::Even { name, value: value.to_string() }
    }

    pub(crate) fn not_squarefree(name: &'static str, value: impl fmt::Display) -> Self {
        Error::NotSquarefree { name, value: value.to_string() }
    }

    pub(crate) fn coprime(a: impl fmt::Display, b: impl fmt::Display) -> Self {
        Error::NotCoprime(a.to_string(), b.to_string())
    }

    /// True for self-check failures (as opposed to bad input).
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
