//! Finite-precision p-adic numbers.
//!
//! A nonzero element is `p^v * u` with `u` a unit known modulo `p^k`. The
//! relative precision `k` counts unit digits; the absolute precision is
//! `v + k`. Exact zero is a separate value.

mod functions;
mod poly;

pub use functions::{
    digits, from_digits, padic_sqrt, smallest_nonresidue, sqrt_series_1p8x, square_class,
    square_class_rational, teichmuller, unit_decompose, vp_factorial, DigitScheme, SquareClass,
};
pub use poly::{hensel_lift, IntPolynomial};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{mod_inv, modulo, pow_rational, require_prime, vp_split, Rational};
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 32;

pub(crate) fn ppow(p: &BigInt, k: u64) -> BigInt {
    num_traits::pow(p.clone(), k as usize)
}

/// Splits a nonzero integer into `(v_p(n), n / p^v)`.
pub(crate) fn split_int(n: &BigInt, p: &BigInt) -> (u64, BigInt) {
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return (v, n);
        }
        n = q;
        v += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Value {
    Zero,
    Nonzero { valuation: i64, unit: BigInt, precision: u32 },
}

/// An element of `Q_p` to finite precision.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PAdic {
    prime: BigInt,
    value: Value,
}

impl PAdic {
    /// Exact zero. The prime is checked.
    pub fn zero(p: &BigInt) -> Result<Self> {
        require_prime("p", p)?;
        Ok(PAdic { prime: p.clone(), value: Value::Zero })
    }

    /// `p^valuation * unit` with the unit known modulo `p^precision`.
    pub fn new(p: &BigInt, valuation: i64, unit: &BigInt, precision: u32) -> Result<Self> {
        require_prime("p", p)?;
        if precision == 0 {
            return Err(Error::OutOfRange("precision must be at least 1".into()));
        }
        let unit = modulo(unit, &ppow(p, precision as u64));
        if modulo(&unit, p).is_zero() {
            return Err(Error::NotUnit(format!("{unit} at {p}")));
        }
        Ok(Self::raw(p.clone(), valuation, unit, precision))
    }

    fn raw(prime: BigInt, valuation: i64, unit: BigInt, precision: u32) -> Self {
        PAdic { prime, value: Value::Nonzero { valuation, unit, precision } }
    }

    fn zero_unchecked(prime: &BigInt) -> Self {
        PAdic { prime: prime.clone(), value: Value::Zero }
    }

    /// The image of a rational in `Q_p`, with `precision` unit digits.
    /// Zero maps to exact zero.
    pub fn from_rational(x: &Rational, p: &BigInt, precision: u32) -> Result<Self> {
        require_prime("p", p)?;
        if precision == 0 {
            return Err(Error::OutOfRange("precision must be at least 1".into()));
        }
        let Some((v, u)) = vp_split(x, p) else {
            return Ok(Self::zero_unchecked(p));
        };
        let m = ppow(p, precision as u64);
        let inv = mod_inv(u.denom(), &m).expect("denominator is a unit");
        Ok(Self::raw(p.clone(), v, modulo(&(u.numer() * inv), &m), precision))
    }

    pub fn from_integer(n: &BigInt, p: &BigInt, precision: u32) -> Result<Self> {
        Self::from_rational(&Rational::from_integer(n.clone()), p, precision)
    }

    /// The element of `Z_p` represented by the residue `r mod p^n`.
    ///
    /// A residue divisible by `p^n` is indistinguishable from zero and gives
    /// [`Error::PrecisionLoss`].
    pub fn from_residue(r: &BigInt, p: &BigInt, n: u32) -> Result<Self> {
        require_prime("p", p)?;
        let r = modulo(r, &ppow(p, n as u64));
        if r.is_zero() {
            return Err(Error::PrecisionLoss);
        }
        let (v, u) = split_int(&r, p);
        Ok(Self::raw(p.clone(), v as i64, u, n - v as u32))
    }

    pub fn prime(&self) -> &BigInt {
        &self.prime
    }

    pub fn is_zero(&self) -> bool {
        self.value == Value::Zero
    }

    /// `v_p(x)`, or `None` for exact zero.
    pub fn valuation(&self) -> Option<i64> {
        match &self.value {
            Value::Zero => None,
            Value::Nonzero { valuation, .. } => Some(*valuation),
        }
    }

    /// The unit part as a residue in `[1, p^k)`.
    pub fn unit(&self) -> Option<&BigInt> {
        match &self.value {
            Value::Zero => None,
            Value::Nonzero { unit, .. } => Some(unit),
        }
    }

    /// Relative precision `k`; `None` for exact zero.
    pub fn precision(&self) -> Option<u32> {
        match &self.value {
            Value::Zero => None,
            Value::Nonzero { precision, .. } => Some(*precision),
        }
    }

    /// `v + k`; `None` for exact zero.
    pub fn absolute_precision(&self) -> Option<i64> {
        match &self.value {
            Value::Zero => None,
            Value::Nonzero { valuation, precision, .. } => Some(valuation + *precision as i64),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Some(0)
    }

    /// True for elements of `Z_p`.
    pub fn is_integral(&self) -> bool {
        self.valuation().is_none_or(|v| v >= 0)
    }

    /// The rational `p^v * u` using the stored unit residue.
    pub fn to_rational(&self) -> Rational {
        match &self.value {
            Value::Zero => Rational::zero(),
            Value::Nonzero { valuation, unit, .. } => {
                pow_rational(&Rational::from_integer(self.prime.clone()), *valuation)
                    * Rational::from_integer(unit.clone())
            }
        }
    }

    /// The residue of an integral element modulo `p^n`, for `n` up to the
    /// absolute precision.
    pub fn residue(&self, n: u32) -> Result<BigInt> {
        match &self.value {
            Value::Zero => Ok(BigInt::zero()),
            Value::Nonzero { valuation, unit, precision } => {
                if *valuation < 0 {
                    return Err(Error::OutOfRange(format!("{self} is not in Z_{}", self.prime)));
                }
                if n as i64 > valuation + *precision as i64 {
                    return Err(Error::OutOfRange(format!(
                        "residue mod {}^{n} exceeds the known precision of {self}",
                        self.prime
                    )));
                }
                let m = ppow(&self.prime, n as u64);
                Ok(modulo(&(ppow(&self.prime, *valuation as u64) * unit), &m))
            }
        }
    }

    /// Lowers the relative precision to `k` (no-op if already lower).
    pub fn truncate(&self, k: u32) -> Self {
        match &self.value {
            Value::Nonzero { valuation, unit, precision } if k >= 1 && k < *precision => {
                let m = ppow(&self.prime, k as u64);
                Self::raw(self.prime.clone(), *valuation, modulo(unit, &m), k)
            }
            _ => self.clone(),
        }
    }

    /// True when `r` agrees with `self` to the absolute precision of `self`.
    /// Exact zero agrees only with zero.
    pub fn agrees_with(&self, r: &Rational) -> bool {
        match &self.value {
            Value::Zero => r.is_zero(),
            Value::Nonzero { .. } => {
                let n = self.absolute_precision().unwrap();
                match vp_split(&(r - self.to_rational()), &self.prime) {
                    None => true,
                    Some((v, _)) => v >= n,
                }
            }
        }
    }

    fn same_prime(&self, other: &Self) -> Result<()> {
        if self.prime != other.prime {
            return Err(Error::PrimeMismatch(self.prime.to_string(), other.prime.to_string()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        let (
            Value::Nonzero { valuation: v1, unit: u1, precision: k1 },
            Value::Nonzero { valuation: v2, unit: u2, precision: k2 },
        ) = (&self.value, &other.value)
        else {
            return Ok(if self.is_zero() { other.clone() } else { self.clone() });
        };
        let p = &self.prime;
        let n = (v1 + *k1 as i64).min(v2 + *k2 as i64);
        let m = *v1.min(v2);
        let width = (n - m) as u64;
        let modulus = ppow(p, width);
        let mut s = BigInt::zero();
        for (v, u) in [(v1, u1), (v2, u2)] {
            let shift = (v - m) as u64;
            if shift < width {
                s += ppow(p, shift) * u;
            }
        }
        let s = modulo(&s, &modulus);
        if s.is_zero() {
            return Err(Error::PrecisionLoss);
        }
        let (t, unit) = split_int(&s, p);
        Ok(Self::raw(p.clone(), m + t as i64, unit, (width - t) as u32))
    }

    pub fn neg(&self) -> Self {
        match &self.value {
            Value::Zero => self.clone(),
            Value::Nonzero { valuation, unit, precision } => {
                let m = ppow(&self.prime, *precision as u64);
                Self::raw(self.prime.clone(), *valuation, modulo(&-unit, &m), *precision)
            }
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        match (&self.value, &other.value) {
            (
                Value::Nonzero { valuation: v1, unit: u1, precision: k1 },
                Value::Nonzero { valuation: v2, unit: u2, precision: k2 },
            ) => {
                let k = *k1.min(k2);
                let m = ppow(&self.prime, k as u64);
                Ok(Self::raw(self.prime.clone(), v1 + v2, modulo(&(u1 * u2), &m), k))
            }
            _ => Ok(Self::zero_unchecked(&self.prime)),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        match &self.value {
            Value::Zero => Err(Error::DivisionByZero),
            Value::Nonzero { valuation, unit, precision } => {
                let m = ppow(&self.prime, *precision as u64);
                let inv = mod_inv(unit, &m).expect("unit residue is invertible");
                Ok(Self::raw(self.prime.clone(), -valuation, inv, *precision))
            }
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        let inv = other.inverse()?;
        self.checked_mul(&inv)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        match &self.value {
            Value::Zero if e > 0 => Ok(self.clone()),
            Value::Zero if e < 0 => Err(Error::DivisionByZero),
            Value::Zero => Ok(Self::raw(self.prime.clone(), 0, BigInt::one(), DEFAULT_PRECISION)),
            Value::Nonzero { valuation, unit, precision } => {
                let m = ppow(&self.prime, *precision as u64);
                let base = if e < 0 { mod_inv(unit, &m).expect("unit") } else { unit.clone() };
                let u = base.modpow(&BigInt::from(e.unsigned_abs()), &m);
                Ok(Self::raw(self.prime.clone(), valuation * e, u, *precision))
            }
        }
    }

    /// Standard digits `d_0, ..., d_(k-1)` of the unit part.
    pub fn unit_digits(&self) -> Vec<BigInt> {
        match &self.value {
            Value::Zero => Vec::new(),
            Value::Nonzero { unit, precision, .. } => {
                let mut u = unit.clone();
                (0..*precision)
                    .map(|_| {
                        let (q, r) = u.div_mod_floor(&self.prime);
                        u = q;
                        r
                    })
                    .collect()
            }
        }
    }

    /// Parses the text form written by `Display`, checking that the base
    /// matches `p`. `"0"` is exact zero.
    pub fn parse(s: &str, p: &BigInt) -> Result<Self> {
        require_prime("p", p)?;
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |why: &str| Error::Parse(format!("{why} in p-adic literal {s:?}"));
        if text == "0" {
            return Ok(Self::zero_unchecked(p));
        }
        let (head, rest) = text.split_once("*(").ok_or_else(|| bad("missing '*('"))?;
        let (body, tail) = rest.split_once(")+O(").ok_or_else(|| bad("missing ')+O('"))?;
        let tail = tail.strip_suffix(')').ok_or_else(|| bad("unclosed O("))?;

        let power = |t: &str| -> Result<i64> {
            let (base, exp) = t.split_once('^').ok_or_else(|| bad("expected p^e"))?;
            if parse_uint(base).ok_or_else(|| bad("bad base"))? != *p {
                return Err(bad("base differs from the prime"));
            }
            let exp = exp.strip_prefix('(').and_then(|e| e.strip_suffix(')')).unwrap_or(exp);
            parse_i64(exp).ok_or_else(|| bad("bad exponent"))
        };
        let v = power(head)?;
        let n = power(tail)?;

        let mut unit = BigInt::zero();
        let mut count: u32 = 0;
        for (i, term) in body.split('+').enumerate() {
            let (digit, place) = match term.split_once('*') {
                Some((d, rest)) => (d, Some(rest)),
                None => (term, None),
            };
            let d = parse_uint(digit).ok_or_else(|| bad("bad digit"))?;
            if d >= *p {
                return Err(bad("digit out of range"));
            }
            let e = match place {
                None => 0,
                Some(t) if *t == p.to_string() => 1,
                Some(t) => power(t)?,
            };
            if e != i as i64 || (place.is_none() && i != 0) {
                return Err(bad("digit positions out of order"));
            }
            unit += d * ppow(p, i as u64);
            count += 1;
        }
        if n - v != count as i64 {
            return Err(bad("O-term disagrees with the digit count"));
        }
        if modulo(&unit, p).is_zero() {
            return Err(bad("leading digit is zero"));
        }
        Ok(Self::raw(p.clone(), v, unit, count))
    }
}

fn parse_uint(s: &str) -> Option<BigInt> {
    (!s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()))
        .then(|| s.parse().ok())
        .flatten()
}

fn parse_i64(s: &str) -> Option<i64> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl fmt::Display for PAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Value::Nonzero { valuation, precision, .. } = &self.value else {
            return f.write_str("0");
        };
        let p = &self.prime;
        write!(f, "{p}^{valuation} * (")?;
        for (i, d) in self.unit_digits().iter().enumerate() {
            match i {
                0 => write!(f, "{d}")?,
                1 => write!(f, " + {d}*{p}")?,
                _ => write!(f, " + {d}*{p}^{i}")?,
            }
        }
        write!(f, ") + O({p}^{})", valuation + *precision as i64)
    }
}

/// The four field operations, as named on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FromStr for ArithOp {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "add" => Ok(ArithOp::Add),
            "sub" => Ok(ArithOp::Sub),
            "mul" => Ok(ArithOp::Mul),
            "div" => Ok(ArithOp::Div),
            _ => Err(Error::Parse(format!("unknown operation {s:?}"))),
        }
    }
}

pub fn arith(op: ArithOp, x: &PAdic, y: &PAdic) -> Result<PAdic> {
    match op {
        ArithOp::Add => x.checked_add(y),
        ArithOp::Sub => x.checked_sub(y),
        ArithOp::Mul => x.checked_mul(y),
        ArithOp::Div => x.checked_div(y),
    }
}

/// `v_p` of a residue `r mod p^n`, capped at `n`.
pub(crate) fn residue_valuation(r: &BigInt, p: &BigInt, n: u64) -> u64 {
    if r.is_zero() {
        return n;
    }
    split_int(r, p).0.min(n)
}
