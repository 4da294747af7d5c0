//! Square roots modulo primes (Tonelli-Shanks) and modulo squarefree
//! integers (per-prime roots glued by the Chinese remainder theorem).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{factorize, mod_inv, modulo, require_odd_prime};
use crate::error::{Error, Result};

/// The square root `r` of `a` modulo the odd prime `p` with
/// `0 < r <= (p-1)/2`, or `None` when `a` is a non-residue.
pub fn sqrt_mod_prime(a: &BigInt, p: &BigInt) -> Result<Option<BigInt>> {
    require_odd_prime("p", p)?;
    if modulo(a, p).is_zero() {
        return Err(Error::coprime(a, p));
    }
    Ok(sqrt_mod_prime_unchecked(a, p))
}

/// Tonelli-Shanks, with the `a^((p+1)/4)` shortcut for `p = 3 mod 4`.
/// Caller guarantees `p` is an odd prime not dividing `a`.
pub(crate) fn sqrt_mod_prime_unchecked(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = modulo(a, p);
    let one = BigInt::one();
    let p1 = p - &one;
    let half = &p1 >> 1;
    if a.modpow(&half, p) != one {
        return None;
    }
    let r = if (p % 4u32) == BigInt::from(3) {
        a.modpow(&((p + &one) >> 2), p)
    } else {
        let s = p1.trailing_zeros().expect("p - 1 > 0");
        let q = &p1 >> s;
        let mut z = BigInt::from(2);
        while z.modpow(&half, p) == one {
            z += 1;
        }
        let mut m = s;
        let mut c = z.modpow(&q, p);
        let mut t = a.modpow(&q, p);
        let mut r = a.modpow(&((&q + &one) >> 1), p);
        while !t.is_one() {
            let mut i = 0;
            let mut t2 = t.clone();
            while !t2.is_one() {
                t2 = &t2 * &t2 % p;
                i += 1;
            }
            let b = c.modpow(&(BigInt::one() << (m - i - 1)), p);
            m = i;
            c = &b * &b % p;
            t = t * &c % p;
            r = r * b % p;
        }
        r
    };
    let other = p - &r;
    Some(if other < r { other } else { r })
}

/// The smallest `d` in `[0, |b|/2]` with `d^2 = a (mod b)`, for `b`
/// squarefree with `|b| > 1` and `gcd(a, b) = 1`.
///
/// The prime 2, when it divides `b`, only imposes `d = a (mod 2)`.
pub fn sqrt_mod_squarefree(a: &BigInt, b: &BigInt) -> Result<Option<BigInt>> {
    if b.abs() <= BigInt::one() {
        return Err(Error::OutOfRange(format!("|b| must exceed 1, got {b}")));
    }
    let f = factorize(b)?;
    if !f.is_squarefree() {
        return Err(Error::not_squarefree("b", b));
    }
    if !a.gcd(b).is_one() {
        return Err(Error::coprime(a, b));
    }
    sqrt_mod_squarefree_allowing_shared(a, b)
}

/// As [`sqrt_mod_squarefree`], but primes dividing both `a` and `b` are
/// allowed and force `d = 0` modulo that prime. Used by the conic solver,
/// where squarefree `a` and `b` may share factors.
pub(crate) fn sqrt_mod_squarefree_allowing_shared(a: &BigInt, b: &BigInt) -> Result<Option<BigInt>> {
    let modulus = b.abs();
    let f = factorize(&modulus)?;
    // Per-prime root sets, as (prime, root, has_distinct_negative).
    let mut local = Vec::with_capacity(f.factors().len());
    for (q, _) in f.factors() {
        let r = if q == &BigInt::from(2) {
            (modulo(a, q), false)
        } else if modulo(a, q).is_zero() {
            (BigInt::zero(), false)
        } else {
            match sqrt_mod_prime_unchecked(a, q) {
                Some(r) => (r, true),
                None => return Ok(None),
            }
        };
        local.push((q.clone(), r.0, r.1));
    }
    // CRT idempotents e_i = 1 mod q_i, 0 mod q_j.
    let basis: Vec<BigInt> = local
        .iter()
        .map(|(q, _, _)| {
            let rest = &modulus / q;
            rest.clone() * mod_inv(&rest, q).expect("squarefree modulus")
        })
        .collect();
    let flippable: Vec<usize> = (0..local.len()).filter(|&i| local[i].2).collect();
    let base: BigInt = local
        .iter()
        .zip(&basis)
        .map(|((_, r, _), e)| r * e)
        .sum();
    let mut best: Option<BigInt> = None;
    for mask in 0u64..(1u64 << flippable.len()) {
        let mut d = base.clone();
        for (bit, &i) in flippable.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                d -= BigInt::from(2) * &local[i].1 * &basis[i];
            }
        }
        let d = modulo(&d, &modulus);
        if best.as_ref().is_none_or(|b| &d < b) {
            best = Some(d);
        }
    }
    Ok(best)
}
