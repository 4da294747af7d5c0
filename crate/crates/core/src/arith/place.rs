use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::factor::is_prime;
use crate::error::{Error, Result};

/// A place of Q: the archimedean absolute value or a prime.
///
/// Ordered with the archimedean place first, then primes ascending.
/// Construct finite places through [`Place::finite`] or parsing, both of
/// which certify primality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinite,
    Finite(BigInt),
}

impl Place {
    pub fn finite(p: impl Into<BigInt>) -> Result<Self> {
        let p = p.into();
        if !is_prime(&p) {
            return Err(Error::not_prime("place", &p));
        }
        Ok(Place::Finite(p))
    }

    pub fn prime(&self) -> Option<&BigInt> {
        match self {
            Place::Infinite => None,
            Place::Finite(p) => Some(p),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Infinite)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinite => f.write_str("inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "inf" || s == "∞" {
            return Ok(Place::Infinite);
        }
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("expected \"inf\" or a prime, got {s:?}")));
        }
        let p: BigInt = s.parse().map_err(|_| Error::Parse(format!("bad integer {s:?}")))?;
        Place::finite(p)
    }
}
