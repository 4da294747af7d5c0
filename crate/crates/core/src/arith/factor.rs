//! Integer factorization for desk-scale inputs.
//!
//! Trial division by the primes below 10^6 strips small factors. Whatever
//! is left is certified with Miller-Rabin and split with Brent's variant of
//! Pollard rho, both running on 128-bit Montgomery arithmetic. Inputs larger
//! than the configured bound (2^96 by default) are refused up front rather
//! than attempted.
//!
//! The Miller-Rabin base set {2, ..., 41} is deterministic below
//! 3.3 * 10^24 (about 2^81). Above that it is still a strong probable-prime
//! test with extra bases, which is adequate for the workloads here.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::sign::Sign;

pub const TRIAL_DIVISION_LIMIT: u32 = 1_000_000;
pub const DEFAULT_MAX_BITS: u32 = 96;
/// Montgomery arithmetic below needs the modulus under 2^127.
pub const MAX_SUPPORTED_BITS: u32 = 126;

const MR_BASES: [u128; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];
const MR_DETERMINISTIC_BOUND: u128 = 3_317_044_064_679_887_385_961_981;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = TRIAL_DIVISION_LIMIT as usize;
        let mut composite = vec![false; limit + 1];
        let mut primes = Vec::with_capacity(80_000);
        for i in 2..=limit {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j <= limit {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

/// `sign * prod(p^e)` with strictly increasing primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    sign: Sign,
    factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn factors(&self) -> &[(BigInt, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn exponent(&self, p: &BigInt) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// Multiplies the factorization back out.
    pub fn value(&self) -> BigInt {
        let mut n = BigInt::from(self.sign.to_i32());
        for (p, e) in &self.factors {
            n *= p.pow(*e);
        }
        n
    }

    /// Splits `|n| = s * f^2` with `s` squarefree and positive.
    pub fn squarefree_split(&self) -> (BigInt, BigInt) {
        let mut core = BigInt::one();
        let mut root = BigInt::one();
        for (p, e) in &self.factors {
            if e % 2 == 1 {
                core *= p;
            }
            root *= p.pow(e / 2);
        }
        (core, root)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

impl std::fmt::Display for Factorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.sign.is_minus() {
            f.write_str("-")?;
        }
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factorization with a configurable workload bound.
#[derive(Clone, Copy, Debug)]
pub struct Factorizer {
    max_bits: u32,
    rho_budget: u64,
}

impl Default for Factorizer {
    fn default() -> Self {
        Factorizer { max_bits: DEFAULT_MAX_BITS, rho_budget: 1 << 30 }
    }
}

impl Factorizer {
    pub fn with_max_bits(max_bits: u32) -> Result<Self> {
        if max_bits == 0 || max_bits > MAX_SUPPORTED_BITS {
            return Err(Error::OutOfRange(format!(
                "factorization bound must be between 1 and {MAX_SUPPORTED_BITS} bits"
            )));
        }
        Ok(Factorizer { max_bits, ..Default::default() })
    }

    /// Caps the total number of rho iterations spent on one input.
    pub fn with_rho_budget(mut self, iterations: u64) -> Self {
        self.rho_budget = iterations;
        self
    }

    pub fn max_bits(&self) -> u32 {
        self.max_bits
    }

    pub fn factorize(&self, n: &BigInt) -> Result<Factorization> {
        if n.is_zero() {
            return Err(Error::Zero("n"));
        }
        let sign = Sign::from_bool(n.is_positive());
        let magnitude = n.abs();
        if magnitude.bits() > u64::from(self.max_bits) {
            return Err(Error::WorkloadExceeded(format!(
                "|n| has {} bits, bound is {}",
                magnitude.bits(),
                self.max_bits
            )));
        }
        let mut m = magnitude.to_u128().expect("bounded by max_bits");
        let mut factors: Vec<(u128, u32)> = Vec::new();

        for &p in small_primes() {
            let p = u128::from(p);
            if p * p > m {
                break;
            }
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            if e > 0 {
                factors.push((p, e));
            }
        }

        if m > 1 {
            let limit = u128::from(TRIAL_DIVISION_LIMIT);
            if m < limit * limit {
                factors.push((m, 1));
            } else {
                let mut large = Vec::new();
                let mut budget = self.rho_budget;
                split_large(m, &mut large, &mut budget)?;
                large.sort_unstable();
                for p in large {
                    match factors.last_mut() {
                        Some((q, e)) if *q == p => *e += 1,
                        _ => factors.push((p, 1)),
                    }
                }
            }
        }

        Ok(Factorization {
            sign,
            factors: factors
                .into_iter()
                .map(|(p, e)| (BigInt::from(p), e))
                .collect(),
        })
    }
}

/// Factors `n` with the default bound of 2^96.
pub fn factorize(n: &BigInt) -> Result<Factorization> {
    Factorizer::default().factorize(n)
}

fn split_large(n: u128, out: &mut Vec<u128>, budget: &mut u64) -> Result<()> {
    if n == 1 {
        return Ok(());
    }
    if is_prime_u128(n) {
        out.push(n);
        return Ok(());
    }
    if let Some(r) = exact_sqrt(n) {
        split_large(r, out, budget)?;
        return split_large(r, out, budget);
    }
    for c in 1u128.. {
        if *budget == 0 {
            return Err(Error::WorkloadExceeded(format!(
                "Pollard rho iteration budget exhausted on {n}"
            )));
        }
        if let Some(d) = pollard_brent(n, c, budget) {
            split_large(d, out, budget)?;
            return split_large(n / d, out, budget);
        }
    }
    unreachable!()
}

fn exact_sqrt(n: u128) -> Option<u128> {
    let r = BigUint::from(n).sqrt().to_u128()?;
    (r * r == n).then_some(r)
}

/// Primality test. Exact below 3.3 * 10^24, strong probable prime above.
pub fn is_prime(n: &BigInt) -> bool {
    if !n.is_positive() {
        return false;
    }
    if n.bits() <= u64::from(MAX_SUPPORTED_BITS) {
        return is_prime_u128(n.to_u128().expect("fits"));
    }
    is_probable_prime_big(n.magnitude())
}

pub(crate) fn is_prime_u128(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    if n < 71 * 71 {
        return true;
    }
    let mont = Montgomery::new(n);
    let one = mont.one();
    let minus_one = mont.sub(0, one);
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let bases: &[u128] = if n < MR_DETERMINISTIC_BOUND { &MR_BASES[..13] } else { &MR_BASES };
    'witness: for &a in bases {
        let mut x = mont.pow(mont.enter(a), d);
        if x == one || x == minus_one {
            continue;
        }
        for _ in 1..s {
            x = mont.mul(x, x);
            if x == minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn is_probable_prime_big(n: &BigUint) -> bool {
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if n.is_even() {
        return *n == two;
    }
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: u128, c: u128, budget: &mut u64) -> Option<u128> {
    const BATCH: u64 = 128;
    let mont = Montgomery::new(n);
    let c = mont.enter(c);
    let step = |x: u128| mont.add(mont.mul(x, x), c);
    let diff = |x: u128, y: u128| x.abs_diff(y);

    let mut y = mont.enter(2);
    let mut x = y;
    let mut ys = y;
    let mut q = mont.one();
    let mut g = 1u128;
    let mut r = 1u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let m = BATCH.min(r - k);
            for _ in 0..m {
                y = step(y);
                q = mont.mul(q, diff(x, y));
            }
            g = q.gcd(&n);
            k += m;
        }
        *budget = budget.saturating_sub(2 * r);
        if *budget == 0 && g == 1 {
            return None;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = step(ys);
            g = diff(x, ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

const LOW: u128 = u64::MAX as u128;

fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    let (a1, a0) = (a >> 64, a & LOW);
    let (b1, b0) = (b >> 64, b & LOW);
    let p00 = a0 * b0;
    let p01 = a0 * b1;
    let p10 = a1 * b0;
    let p11 = a1 * b1;
    let mid = (p00 >> 64) + (p01 & LOW) + (p10 & LOW);
    let lo = (p00 & LOW) | (mid << 64);
    let hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    (hi, lo)
}

/// Montgomery arithmetic modulo an odd `n < 2^127`, with `R = 2^128`.
#[derive(Clone, Copy, Debug)]
struct Montgomery {
    n: u128,
    neg_inv: u128,
    r2: u128,
    r: u128,
}

impl Montgomery {
    fn new(n: u128) -> Self {
        debug_assert!(n % 2 == 1 && n > 1 && n >> 127 == 0);
        // n * n = 1 mod 8, so n is its own inverse to 3 bits; Newton doubles that.
        let mut inv = n;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
        }
        let r = (u128::MAX % n + 1) % n;
        let mut r2 = r;
        for _ in 0..128 {
            r2 <<= 1;
            if r2 >= n {
                r2 -= n;
            }
        }
        Montgomery { n, neg_inv: inv.wrapping_neg(), r2, r }
    }

    fn one(&self) -> u128 {
        self.r
    }

    fn redc(&self, hi: u128, lo: u128) -> u128 {
        let m = lo.wrapping_mul(self.neg_inv);
        let (mh, ml) = mul_wide(m, self.n);
        let (_, carry) = lo.overflowing_add(ml);
        let t = hi + mh + u128::from(carry);
        if t >= self.n {
            t - self.n
        } else {
            t
        }
    }

    fn mul(&self, a: u128, b: u128) -> u128 {
        let (hi, lo) = mul_wide(a, b);
        self.redc(hi, lo)
    }

    fn enter(&self, a: u128) -> u128 {
        self.mul(a % self.n, self.r2)
    }

    #[cfg(test)]
    fn leave(&self, a: u128) -> u128 {
        self.redc(0, a)
    }

    fn add(&self, a: u128, b: u128) -> u128 {
        let s = a + b;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }

    fn sub(&self, a: u128, b: u128) -> u128 {
        if a >= b {
            a - b
        } else {
            a + self.n - b
        }
    }

    fn pow(&self, mut base: u128, mut e: u128) -> u128 {
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}
