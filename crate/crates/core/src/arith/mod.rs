//! Exact integer and rational arithmetic: factorization, valuations,
//! absolute values at every place, and modular square roots.

mod factor;
mod modsqrt;
mod place;

pub use factor::{
    factorize, is_prime, Factorization, Factorizer, DEFAULT_MAX_BITS, MAX_SUPPORTED_BITS,
    TRIAL_DIVISION_LIMIT,
};
pub use modsqrt::{sqrt_mod_prime, sqrt_mod_squarefree};
pub(crate) use modsqrt::sqrt_mod_prime_unchecked;
#[allow(unused_imports)]
pub(crate) use modsqrt::sqrt_mod_squarefree_allowing_shared;
pub use place::Place;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

pub fn ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Parses `n`, `n/d` or `-n/d`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let unsigned = num.strip_prefix('-').unwrap_or(num);
    if !digits(unsigned) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = match den {
        Some(d) if digits(d) => d.parse().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::Zero("denominator"));
    }
    Ok(Rational::new(n, d))
}

/// Nonnegative remainder of `a` modulo `m > 0`.
pub fn modulo(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = modulo(a, m).extended_gcd(m);
    e.gcd.is_one().then(|| modulo(&e.x, m))
}

/// `v_p(n)` for a nonzero integer; `None` means `n = 0`.
pub fn valuation_int(n: &BigInt, p: &BigInt) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

fn strip(n: &BigInt, p: &BigInt) -> (u64, BigInt) {
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

/// Writes `x = p^r * u` with numerator and denominator of `u` prime to `p`.
///
/// Returns `None` for `x = 0`, whose valuation is `+inf`.
pub fn vp_split(x: &Rational, p: &BigInt) -> Option<(i64, Rational)> {
    if x.is_zero() {
        return None;
    }
    let (vn, n) = strip(x.numer(), p);
    let (vd, d) = strip(x.denom(), p);
    Some((vn as i64 - vd as i64, Rational::new(n, d)))
}

/// `v_p(x)`, or `None` for zero.
pub fn valuation(x: &Rational, p: &BigInt) -> Option<i64> {
    vp_split(x, p).map(|(v, _)| v)
}

/// Normalized absolute value `|x|_v`, exact at every place.
pub fn abs_place(x: &Rational, v: &Place) -> Rational {
    match v {
        Place::Infinite => x.abs(),
        Place::Finite(p) => match valuation(x, p) {
            None => Rational::zero(),
            Some(r) => pow_rational(&Rational::from_integer(p.clone()), -r),
        },
    }
}

pub(crate) fn pow_rational(x: &Rational, e: i64) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

/// Checks `|x|_inf * prod_p |x|_p = 1` exactly, over the primes dividing
/// the numerator or denominator of `x`.
pub fn norm_product_check(x: &Rational) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::Zero("x"));
    }
    let mut product = abs_place(x, &Place::Infinite);
    for part in [x.numer(), x.denom()] {
        for p in factorize(part)?.primes() {
            product *= abs_place(x, &Place::Finite(p.clone()));
        }
    }
    Ok(product.is_one())
}

/// Writes a nonzero rational as `s * m^2` with `s` a squarefree integer.
pub fn squarefree_decompose(x: &Rational) -> Result<(BigInt, Rational)> {
    if x.is_zero() {
        return Err(Error::Zero("x"));
    }
    // n/d = (n d) / d^2
    let nd = x.numer() * x.denom();
    let f = factorize(&nd)?;
    let (core, root) = f.squarefree_split();
    let s = if x.is_negative() { -core } else { core };
    Ok((s, Rational::new(root, x.denom().clone())))
}

pub fn is_squarefree(n: &BigInt) -> Result<bool> {
    Ok(factorize(n)?.is_squarefree())
}

pub(crate) fn require_prime(name: &'static str, p: &BigInt) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::not_prime(name, p))
    }
}

pub(crate) fn require_odd_prime(name: &'static str, p: &BigInt) -> Result<()> {
    require_prime(name, p)?;
    if p.is_even() {
        return Err(Error::even(name, p));
    }
    Ok(())
}

/// Integer square root test for rationals: `Some(r)` with `r >= 0` and
/// `r^2 = x` when `x` is the square of a rational.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Rational::new(n, d))
}
