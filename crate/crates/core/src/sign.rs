//! The two-element groups `{+1, -1}` and `F_2`, and the exponential
//! isomorphism between them: `sign = (-1)^epsilon`.

use std::fmt;
use std::ops::{Add, Mul};

/// An element of `{+1, -1}` under multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_bool(positive: bool) -> Self {
        if positive {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn to_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i64(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    /// The exponent `e` with `self = (-1)^e`.
    pub fn epsilon(self) -> Epsilon {
        Epsilon(self == Sign::Minus)
    }

    pub fn pow(self, e: i64) -> Self {
        if e.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            self
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_bool(self == rhs)
    }
}

impl std::iter::Product for Sign {
    fn product<I: Iterator<Item = Sign>>(iter: I) -> Sign {
        iter.fold(Sign::Plus, |acc, s| acc * s)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// An element of the two-element field `F_2`, used as the exponent of a
/// sign. Addition is XOR, multiplication is AND.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Epsilon(pub bool);

impl Epsilon {
    pub const ZERO: Epsilon = Epsilon(false);
    pub const ONE: Epsilon = Epsilon(true);

    pub fn from_int(e: i64) -> Self {
        Epsilon(e.rem_euclid(2) == 1)
    }

    pub fn value(self) -> u8 {
        self.0 as u8
    }

    /// `(-1)^self`.
    pub fn sign(self) -> Sign {
        Sign::from_bool(!self.0)
    }
}

impl Add for Epsilon {
    type Output = Epsilon;
    // addition in F_2
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Epsilon) -> Epsilon {
        Epsilon(self.0 ^ rhs.0)
    }
}

impl Mul for Epsilon {
    type Output = Epsilon;
    fn mul(self, rhs: Epsilon) -> Epsilon {
        Epsilon(self.0 && rhs.0)
    }
}

impl std::iter::Sum for Epsilon {
    fn sum<I: Iterator<Item = Epsilon>>(iter: I) -> Epsilon {
        iter.fold(Epsilon::ZERO, |acc, e| acc + e)
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}
