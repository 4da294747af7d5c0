//! `lambda_p(2012)` for the Mersenne prime `p = 2^43112609 - 1`, computed
//! without writing `p` down.
//!
//! `2012 = 2^2 * 503`, so `lambda_p(2012) = lambda_p(503)`. Since
//! `p = 3 (mod 4)`, reciprocity gives `lambda_p(503) = lambda_503(-p)`, and
//! `p mod 503` only needs `2^43112609 mod 503`, i.e. the exponent mod 502.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::sign::Sign;
use crate::symbols::legendre;

pub const MERSENNE_EXPONENT: u64 = 43_112_609;
pub const MODULUS: u64 = 503;
pub const TARGET: u64 = 2012;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BostDemo {
    /// `43112609 mod 502`.
    pub exponent_mod: u64,
    /// `2^(43112609 mod 502) mod 503`.
    pub two_power: u64,
    /// `p mod 503`.
    pub p_mod: u64,
    /// `-p mod 503`.
    pub minus_p_mod: u64,
    /// `lambda_503(-p)` by Euler's criterion.
    pub euler_sign: Sign,
    /// The same sign as a product of `lambda_503` over `-1` and the prime
    /// factors of `p mod 503`.
    pub factored_sign: Sign,
    /// Prime factors of `p mod 503`.
    pub factors: Vec<u64>,
}

impl BostDemo {
    /// `lambda_p(2012)`.
    pub fn sign(&self) -> Sign {
        self.euler_sign
    }
}

fn pow_mod(b: u64, e: u64, m: u64) -> u64 {
    BigInt::from(b).modpow(&BigInt::from(e), &BigInt::from(m)).try_into().expect("residue fits")
}

pub fn bost_demo() -> Result<BostDemo> {
    let q = MODULUS;
    let (four, rest) = TARGET.div_rem(&q);
    if rest != 0 || four != 4 {
        return Err(Error::Invariant("2012 != 4 * 503".into()));
    }
    // p = 2^n - 1 with n > 1 is 3 mod 4, so lambda_4(p) = -1
    let exponent_mod = MERSENNE_EXPONENT % (q - 1);
    let two_power = pow_mod(2, exponent_mod, q);
    if two_power != pow_mod(2, MERSENNE_EXPONENT, q) {
        return Err(Error::Invariant("Fermat reduction of the exponent failed".into()));
    }
    let p_mod = (two_power + q - 1) % q;
    let minus_p_mod = (q - p_mod) % q;
    let euler = pow_mod(minus_p_mod, (q - 1) / 2, q);
    let euler_sign = match euler {
        1 => Sign::Plus,
        e if e == q - 1 => Sign::Minus,
        e => return Err(Error::Invariant(format!("Euler criterion gave {e}"))),
    };
    let qb = BigInt::from(q);
    let mut factored_sign = legendre(&BigInt::from(-1), &qb)?;
    let mut factors = Vec::new();
    for (l, e) in factorize(&BigInt::from(p_mod))?.factors() {
        factored_sign = factored_sign * legendre(l, &qb)?.pow(i64::from(*e));
        factors.push(u64::try_from(l).expect("small factor"));
    }
    Ok(BostDemo {
        exponent_mod,
        two_power,
        p_mod,
        minus_p_mod,
        euler_sign,
        factored_sign,
        factors,
    })
}
