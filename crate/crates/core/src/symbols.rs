//! Quadratic residue symbols and quadratic characters.
//!
//! `lambda_p` is the Legendre symbol at an odd prime, `lambda_4` and
//! `lambda_8` the primitive characters of conductor 4 and 8. Every sign
//! function has an `epsilon_*` twin returning the exponent in `F_2`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{factorize, is_prime, modulo, require_odd_prime, vp_split, Rational};
use crate::error::{Error, Result};
use crate::sign::{Epsilon, Sign};

/// `lambda_p(a)` by Euler's criterion, `a^((p-1)/2) mod p`.
pub fn legendre(a: &BigInt, p: &BigInt) -> Result<Sign> {
    require_odd_prime("p", p)?;
    if modulo(a, p).is_zero() {
        return Err(Error::coprime(a, p));
    }
    Ok(euler_criterion(a, p))
}

/// Euler's criterion without argument checks.
pub(crate) fn euler_criterion(a: &BigInt, p: &BigInt) -> Sign {
    let e: BigInt = (p - 1u32) >> 1;
    Sign::from_bool(modulo(a, p).modpow(&e, p).is_one())
}

/// `lambda_p` on `Z_(p)^x`: the rational must have `v_p = 0`.
pub fn legendre_rational(a: &Rational, p: &BigInt) -> Result<Sign> {
    require_odd_prime("p", p)?;
    match vp_split(a, p) {
        Some((0, _)) => Ok(euler_criterion(a.numer(), p) * euler_criterion(a.denom(), p)),
        _ => Err(Error::NotUnit(format!("{a} at {p}"))),
    }
}

pub fn epsilon_p(a: &BigInt, p: &BigInt) -> Result<Epsilon> {
    legendre(a, p).map(Sign::epsilon)
}

fn require_odd(a: &BigInt) -> Result<()> {
    if a.is_even() {
        return Err(Error::even("a", a));
    }
    Ok(())
}

/// `(-1)^((a-1)/2)` for odd `a`.
pub fn lambda4(a: &BigInt) -> Result<Sign> {
    require_odd(a)?;
    Ok(Sign::from_bool(modulo(a, &BigInt::from(4)).is_one()))
}

/// `+1` iff `a = +-1 (mod 8)`, for odd `a`.
pub fn lambda8(a: &BigInt) -> Result<Sign> {
    require_odd(a)?;
    let r = modulo(a, &BigInt::from(8));
    Ok(Sign::from_bool(r == BigInt::from(1) || r == BigInt::from(7)))
}

pub fn epsilon4(a: &BigInt) -> Result<Epsilon> {
    lambda4(a).map(Sign::epsilon)
}

pub fn epsilon8(a: &BigInt) -> Result<Epsilon> {
    lambda8(a).map(Sign::epsilon)
}

/// `lambda_4` on 2-adic units given as rationals with odd numerator and
/// denominator.
pub fn lambda4_unit(a: &Rational) -> Result<Sign> {
    Ok(lambda4(a.numer())? * lambda4(a.denom())?)
}

pub fn lambda8_unit(a: &Rational) -> Result<Sign> {
    Ok(lambda8(a.numer())? * lambda8(a.denom())?)
}

/// The sign character of `R^x` as an exponent: 1 for negative input.
pub fn epsilon_inf(a: &Rational) -> Result<Epsilon> {
    if a.is_zero() {
        return Err(Error::Zero("a"));
    }
    Ok(Epsilon(a.is_negative()))
}

fn small_odd_prime(name: &'static str, p: &BigInt) -> Result<u64> {
    require_odd_prime(name, p)?;
    p.to_u64()
        .ok_or_else(|| Error::OutOfRange(format!("{name} = {p} too large for enumeration")))
}

/// `lambda_p(a)` as the product of the signs `e_a(x)` over the half
/// system `[1, (p-1)/2]`, where `e_a(x) = -1` when `a x` reduces into
/// `[-(p-1)/2, -1]`.
pub fn gauss_lemma_sign(a: &BigInt, p: &BigInt) -> Result<Sign> {
    let pu = small_odd_prime("p", p)?;
    let a = modulo(a, p).to_u64().expect("reduced below p");
    if a == 0 {
        return Err(Error::coprime(a, p));
    }
    let half = (pu - 1) / 2;
    let flips = (1..=half)
        .filter(|&x| ((a as u128 * x as u128) % pu as u128) as u64 > half)
        .count();
    Ok(Sign::Minus.pow(flips as i64))
}

/// The lattice counts `(M, N)` over `[1, p'] x [1, q']`:
/// `M` counts pairs with `qx - py` in `[-p', -1]`, `N` those with
/// `qx - py` in `[1, q']`. Then `(-1)^M = lambda_p(q)` and
/// `(-1)^N = lambda_q(p)`.
pub fn lattice_counts(p: &BigInt, q: &BigInt) -> Result<(u64, u64)> {
    let pu = small_odd_prime("p", p)? as i128;
    let qu = small_odd_prime("q", q)? as i128;
    if pu == qu {
        return Err(Error::OutOfRange(format!("p and q must be distinct, both are {p}")));
    }
    let (ph, qh) = ((pu - 1) / 2, (qu - 1) / 2);
    // For fixed x, count y in [1, q'] with lo <= q x - p y <= hi.
    let count = |lo: i128, hi: i128| -> u64 {
        (1..=ph)
            .map(|x| {
                let y_min = Integer::div_ceil(&(qu * x - hi), &pu).max(1);
                let y_max = Integer::div_floor(&(qu * x - lo), &pu).min(qh);
                (y_max - y_min + 1).max(0) as u64
            })
            .sum()
    };
    Ok((count(-ph, -1), count(1, qh)))
}

/// Checks `lambda_p(q) = lambda_q(lambda_4(p) p)` together with the
/// supplementary laws `lambda_p(-1) = lambda_4(p)`, `lambda_p(2) = lambda_8(p)`
/// at both primes.
pub fn reciprocity_check(p: &BigInt, q: &BigInt) -> Result<bool> {
    require_odd_prime("p", p)?;
    require_odd_prime("q", q)?;
    if p == q {
        return Err(Error::OutOfRange(format!("p and q must be distinct, both are {p}")));
    }
    let twisted = lambda4(p)?.to_i32() * p;
    let main = euler_criterion(q, p) == euler_criterion(&twisted, q);
    let supplementary = |l: &BigInt| -> Result<bool> {
        Ok(euler_criterion(&BigInt::from(-1), l) == lambda4(l)?
            && euler_criterion(&BigInt::from(2), l) == lambda8(l)?)
    };
    Ok(main && supplementary(p)? && supplementary(q)?)
}

/// `k(a)`: the product of the primes dividing `a` to an odd power.
pub fn odd_kernel(a: &BigInt) -> Result<BigInt> {
    Ok(factorize(a)?
        .factors()
        .iter()
        .filter(|(_, e)| e % 2 == 1)
        .map(|(p, _)| p.clone())
        .product())
}

/// `psi_a(n) = prod over primes p with v_p(a) odd of lambda_p(n)`, for odd
/// `a` and `n` prime to `k(a)`.
pub fn psi(a: &BigInt, n: &BigInt) -> Result<Sign> {
    if a.is_zero() {
        return Err(Error::Zero("a"));
    }
    require_odd(a)?;
    let f = factorize(a)?;
    let mut s = Sign::Plus;
    for (p, e) in f.factors() {
        if e % 2 == 1 {
            if modulo(n, p).is_zero() {
                return Err(Error::coprime(n, odd_kernel(a)?));
            }
            s = s * euler_criterion(n, p);
        }
    }
    Ok(s)
}

/// A primitive factor of a quadratic character.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CharFactor {
    Lambda4,
    Lambda8,
    /// `lambda_p` for an odd prime `p`.
    Lambda(BigInt),
}

impl CharFactor {
    pub fn conductor(&self) -> BigInt {
        match self {
            CharFactor::Lambda4 => BigInt::from(4),
            CharFactor::Lambda8 => BigInt::from(8),
            CharFactor::Lambda(p) => p.clone(),
        }
    }

    fn eval_unit(&self, x: &BigInt) -> Sign {
        match self {
            CharFactor::Lambda4 => Sign::from_bool(modulo(x, &BigInt::from(4)).is_one()),
            CharFactor::Lambda8 => {
                let r = modulo(x, &BigInt::from(8));
                Sign::from_bool(r == BigInt::from(1) || r == BigInt::from(7))
            }
            CharFactor::Lambda(p) => euler_criterion(x, p),
        }
    }
}

impl fmt::Display for CharFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharFactor::Lambda4 => f.write_str("lambda4"),
            CharFactor::Lambda8 => f.write_str("lambda8"),
            CharFactor::Lambda(p) => write!(f, "lambda{p}"),
        }
    }
}

/// A quadratic character stored structurally as a product of primitive
/// factors, optionally times the unramified sign `nu_p(x) = (-1)^v_p(x)`.
///
/// The empty product is the trivial character. With no `nu_p` factor the
/// character lives on `(Z/mZ)^x` for `m = modulus()`; with one it is a
/// character of `Q_p^x` (uniformiser `p`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QuadraticCharacter {
    factors: BTreeSet<CharFactor>,
    unramified: Option<BigInt>,
}

impl QuadraticCharacter {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn lambda4() -> Self {
        Self::from_factor(CharFactor::Lambda4)
    }

    pub fn lambda8() -> Self {
        Self::from_factor(CharFactor::Lambda8)
    }

    pub fn lambda(p: &BigInt) -> Result<Self> {
        require_odd_prime("p", p)?;
        Ok(Self::from_factor(CharFactor::Lambda(p.clone())))
    }

    /// `nu_p`, the unramified quadratic character of `Q_p^x`.
    pub fn unramified(p: &BigInt) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::not_prime("p", p));
        }
        Ok(QuadraticCharacter { factors: BTreeSet::new(), unramified: Some(p.clone()) })
    }

    fn from_factor(f: CharFactor) -> Self {
        QuadraticCharacter { factors: BTreeSet::from([f]), unramified: None }
    }

    pub fn factors(&self) -> &BTreeSet<CharFactor> {
        &self.factors
    }

    pub fn unramified_prime(&self) -> Option<&BigInt> {
        self.unramified.as_ref()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty() && self.unramified.is_none()
    }

    /// Least common multiple of the factor conductors.
    pub fn modulus(&self) -> BigInt {
        self.factors
            .iter()
            .fold(BigInt::one(), |m, f| m.lcm(&f.conductor()))
    }

    /// Pointwise product. Characters are their own inverses, so shared
    /// factors cancel.
    pub fn times(&self, other: &Self) -> Result<Self> {
        let unramified = match (&self.unramified, &other.unramified) {
            (None, u) | (u, None) => u.clone(),
            (Some(p), Some(q)) if p == q => None,
            (Some(p), Some(q)) => {
                return Err(Error::OutOfRange(format!(
                    "cannot multiply unramified characters at {p} and {q}"
                )))
            }
        };
        Ok(QuadraticCharacter {
            factors: self.factors.symmetric_difference(&other.factors).cloned().collect(),
            unramified,
        })
    }

    /// Value on an integer prime to the modulus.
    pub fn eval(&self, x: &BigInt) -> Result<Sign> {
        if let Some(p) = &self.unramified {
            return Err(Error::OutOfRange(format!(
                "nu_{p} is a local character; evaluate it with eval_local"
            )));
        }
        let m = self.modulus();
        if !x.gcd(&m).is_one() {
            return Err(Error::coprime(x, m));
        }
        Ok(self.factors.iter().map(|f| f.eval_unit(x)).product())
    }

    /// Value on `x` in `Q_p^x`, using the retraction `x -> x p^(-v_p(x))`
    /// onto the units. All factors must be local at `p`.
    pub fn eval_local(&self, x: &Rational, p: &BigInt) -> Result<Sign> {
        let (v, u) = vp_split(x, p).ok_or(Error::Zero("x"))?;
        self.eval_local_parts(v, &u, p)
    }

    pub(crate) fn eval_local_parts(&self, v: i64, u: &Rational, p: &BigInt) -> Result<Sign> {
        let mut s = match &self.unramified {
            Some(q) if q != p => {
                return Err(Error::OutOfRange(format!("nu_{q} evaluated at {p}")));
            }
            Some(_) => Sign::Minus.pow(v),
            None => Sign::Plus,
        };
        let two = BigInt::from(2);
        for f in &self.factors {
            let local = match f {
                CharFactor::Lambda(q) => q == p,
                _ => *p == two,
            };
            if !local {
                return Err(Error::OutOfRange(format!("{f} is not a character of Q_{p}")));
            }
            s = s * f.eval_unit(u.numer()) * f.eval_unit(u.denom());
        }
        Ok(s)
    }
}

impl fmt::Display for QuadraticCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("1");
        }
        let mut parts: Vec<String> = Vec::new();
        if let Some(p) = &self.unramified {
            parts.push(format!("nu{p}"));
        }
        parts.extend(self.factors.iter().map(|x| x.to_string()));
        f.write_str(&parts.join("*"))
    }
}

/// The character `chi_a` of `(Z/4|a|Z)^x` with `chi_a(p) = lambda_p(a)` for
/// every prime `p` not dividing `4a`.
///
/// Built from the odd part `b = l_1...l_r > 0` as
/// `chi_b = lambda_4^eps4(b) prod lambda_{l_i}`, then
/// `chi_{-b} = lambda_4 chi_b` and `chi_{2b} = lambda_8 chi_b`.
pub fn kronecker_character(a: &BigInt) -> Result<QuadraticCharacter> {
    if a.is_zero() {
        return Err(Error::Zero("a"));
    }
    let f = factorize(a)?;
    if !f.is_squarefree() {
        return Err(Error::not_squarefree("a", a));
    }
    let two = BigInt::from(2);
    let mut chi = QuadraticCharacter::trivial();
    let mut odd_part = BigInt::one();
    for p in f.primes().filter(|&p| *p != two) {
        chi = chi.times(&QuadraticCharacter::lambda(p)?)?;
        odd_part *= p;
    }
    if lambda4(&odd_part)?.is_minus() {
        chi = chi.times(&QuadraticCharacter::lambda4())?;
    }
    if a.is_negative() {
        chi = chi.times(&QuadraticCharacter::lambda4())?;
    }
    if f.exponent(&two) == 1 {
        chi = chi.times(&QuadraticCharacter::lambda8())?;
    }
    Ok(chi)
}

/// `chi_a(x)` for squarefree `a` and `x` prime to `4|a|`.
pub fn kronecker_chi(a: &BigInt, x: &BigInt) -> Result<Sign> {
    let chi = kronecker_character(a)?;
    let m = BigInt::from(4) * a.abs();
    if !x.gcd(&m).is_one() {
        return Err(Error::coprime(x, m));
    }
    chi.eval(x)
}

/// An `F_2`-basis of the quadratic characters of `(Z/mZ)^x`: `lambda_p`
/// for each odd `p | m`, `lambda_4` if `4 | m`, `lambda_8` if `8 | m`.
pub fn quadratic_char_basis(m: &BigInt) -> Result<Vec<QuadraticCharacter>> {
    if *m <= BigInt::from(2) {
        return Err(Error::OutOfRange(format!("modulus must exceed 2, got {m}")));
    }
    let f = factorize(m)?;
    let two = BigInt::from(2);
    let v2 = f.exponent(&two);
    let mut basis = Vec::new();
    if v2 > 1 {
        basis.push(QuadraticCharacter::lambda4());
    }
    if v2 > 2 {
        basis.push(QuadraticCharacter::lambda8());
    }
    for p in f.primes().filter(|&p| *p != two) {
        basis.push(QuadraticCharacter::lambda(p)?);
    }
    Ok(basis)
}

/// The product of all elements of `(Z/mZ)^x`: `-1` exactly when `m = 4`,
/// `m = l^a` or `m = 2 l^a` for an odd prime `l`, and `+1` otherwise.
///
/// For `m <= 2` the group is trivial and the answer is `+1`.
pub fn group_product_sign(m: &BigInt) -> Result<Sign> {
    if !m.is_positive() {
        return Err(Error::OutOfRange(format!("m must be positive, got {m}")));
    }
    if *m <= BigInt::from(2) {
        return Ok(Sign::Plus);
    }
    if *m == BigInt::from(4) {
        return Ok(Sign::Minus);
    }
    let f = factorize(m)?;
    let two = BigInt::from(2);
    let odd: Vec<_> = f.factors().iter().filter(|(p, _)| *p != two).collect();
    let cyclic = odd.len() == 1 && f.exponent(&two) <= 1;
    Ok(Sign::from_bool(!cyclic))
}

/// True iff every middle binomial coefficient `C(n, k)`, `0 < k < n`,
/// vanishes mod `n`, i.e. `(T+1)^n = T^n + 1` in `(Z/nZ)[T]`.
pub fn binomial_primality(n: u64) -> Result<bool> {
    if n <= 1 {
        return Err(Error::OutOfRange(format!("n must exceed 1, got {n}")));
    }
    let modulus = BigUint::from(n);
    let mut c = BigUint::one();
    for k in 1..=n / 2 {
        c = c * (n - k + 1) / k;
        if !(&c % &modulus).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn odd_primes_below(n: i64) -> Vec<i64> {
        (3..n).filter(|&p| is_prime(&b(p))).collect()
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(&b(2), &b(7)).unwrap(), Sign::Plus);
        assert_eq!(legendre(&b(1), &b(13)).unwrap(), Sign::Plus);
        assert_eq!(legendre(&b(5), &b(7)).unwrap(), Sign::Minus);
        assert_eq!(epsilon_p(&b(5), &b(7)).unwrap(), Epsilon::ONE);
        assert!(matches!(legendre(&b(14), &b(7)), Err(Error::NotCoprime(..))));
        assert!(matches!(legendre(&b(3), &b(2)), Err(Error::Even { .. })));
    }

    #[test]
    fn legendre_on_rationals_rejects_nonunits() {
        assert_eq!(legendre_rational(&Rational::new(b(2), b(3)), &b(7)).unwrap(), Sign::Minus);
        assert!(matches!(legendre_rational(&Rational::new(b(7), b(3)), &b(7)), Err(Error::NotUnit(_))));
        assert!(matches!(legendre_rational(&Rational::new(b(1), b(7)), &b(7)), Err(Error::NotUnit(_))));
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda4(&b(5)).unwrap(), Sign::Plus);
        assert_eq!(lambda4(&b(-1)).unwrap(), Sign::Minus);
        assert_eq!(lambda8(&b(7)).unwrap(), Sign::Plus);
        assert_eq!(lambda8(&b(5)).unwrap(), Sign::Minus);
        assert_eq!(epsilon8(&b(3)).unwrap(), Epsilon::ONE);
        assert!(lambda4(&b(6)).is_err());
        assert_eq!(lambda8_unit(&Rational::new(b(3), b(5))).unwrap(), Sign::Plus);
    }

    #[test]
    fn gauss_lemma_examples() {
        assert_eq!(gauss_lemma_sign(&b(1), &b(11)).unwrap(), Sign::Plus);
        assert_eq!(gauss_lemma_sign(&b(2), &b(7)).unwrap(), Sign::Plus);
        assert!(gauss_lemma_sign(&b(7), &b(7)).is_err());
    }

    #[test]
    fn lattice_counts_match_enumeration() {
        assert_eq!(lattice_counts(&b(3), &b(5)).unwrap(), (1, 1));
        let primes = odd_primes_below(60);
        for &p in &primes {
            for &q in &primes {
                if p == q {
                    continue;
                }
                let (ph, qh) = ((p - 1) / 2, (q - 1) / 2);
                let mut m = 0;
                let mut n = 0;
                for x in 1..=ph {
                    for y in 1..=qh {
                        let d = q * x - p * y;
                        if (-ph..=-1).contains(&d) {
                            m += 1;
                        }
                        if (1..=qh).contains(&d) {
                            n += 1;
                        }
                    }
                }
                assert_eq!(lattice_counts(&b(p), &b(q)).unwrap(), (m, n), "p={p} q={q}");
            }
        }
        assert!(lattice_counts(&b(5), &b(5)).is_err());
    }

    #[test]
    fn reciprocity_examples() {
        assert!(reciprocity_check(&b(3), &b(5)).unwrap());
        assert_eq!(legendre(&b(17), &b(13)).unwrap(), Sign::Plus);
        assert_eq!(legendre(&b(13), &b(17)).unwrap(), Sign::Plus);
        assert!(reciprocity_check(&b(13), &b(17)).unwrap());
    }

    #[test]
    fn supplementary_laws_below_ten_thousand() {
        for p in odd_primes_below(10_000) {
            let p = b(p);
            assert_eq!(legendre(&b(-1), &p).unwrap(), lambda4(&p).unwrap());
            assert_eq!(legendre(&b(2), &p).unwrap(), lambda8(&p).unwrap());
        }
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&b(1), &b(10)).unwrap(), Sign::Plus);
        assert_eq!(psi(&b(15), &b(2)).unwrap(), Sign::Plus);
        assert_eq!(epsilon8(&b(15)).unwrap(), Epsilon::ZERO);
        assert!(psi(&b(4), &b(3)).is_err());
        assert!(psi(&b(15), &b(6)).is_err());
        // 9 = 3^2 has k(9) = 1, so any n is admissible
        assert_eq!(psi(&b(9), &b(3)).unwrap(), Sign::Plus);
    }

    #[test]
    fn psi_supplementary_values() {
        for a in (-301i64..301).step_by(2) {
            let a = b(a);
            let e_inf = Epsilon(a.is_negative());
            assert_eq!(psi(&a, &b(-1)).unwrap(), (epsilon4(&a).unwrap() + e_inf).sign());
            assert_eq!(psi(&a, &b(2)).unwrap(), epsilon8(&a).unwrap().sign());
        }
    }

    proptest! {
        #[test]
        fn psi_reciprocity(a in -10_000i64..10_000, c in -10_000i64..10_000) {
            let (a, c) = (a | 1, c | 1);
            prop_assume!(num_integer::gcd(a, c) == 1);
            let (ba, bc) = (b(a), b(c));
            let lhs = psi(&ba, &bc).unwrap();
            let twist = epsilon4(&ba).unwrap() * epsilon4(&bc).unwrap()
                + Epsilon(a < 0) * Epsilon(c < 0);
            prop_assert_eq!(lhs, twist.sign() * psi(&bc, &ba).unwrap());
        }

        #[test]
        fn legendre_is_multiplicative(pi in 0usize..94, x in 1i64..1_000_000, y in 1i64..1_000_000) {
            let primes = odd_primes_below(500);
            let p = primes[pi % primes.len()];
            prop_assume!(x % p != 0 && y % p != 0);
            let lhs = legendre(&b(x * y), &b(p)).unwrap();
            prop_assert_eq!(lhs, legendre(&b(x), &b(p)).unwrap() * legendre(&b(y), &b(p)).unwrap());
        }
    }

    #[test]
    fn kronecker_special_cases() {
        for x in (-99i64..100).step_by(2) {
            let x = b(x);
            assert_eq!(kronecker_chi(&b(1), &x).unwrap(), Sign::Plus);
            assert_eq!(kronecker_chi(&b(-1), &x).unwrap(), lambda4(&x).unwrap());
            assert_eq!(kronecker_chi(&b(2), &x).unwrap(), lambda8(&x).unwrap());
        }
        assert!(kronecker_chi(&b(12), &b(5)).is_err());
        assert!(kronecker_chi(&b(3), &b(9)).is_err());
    }

    #[test]
    fn kronecker_agrees_with_legendre_at_primes() {
        let primes = odd_primes_below(400);
        for a in -40i64..=40 {
            let Ok(chi) = kronecker_character(&b(a)) else { continue };
            let m = 4 * a.abs();
            for &p in &primes {
                if m % p == 0 {
                    continue;
                }
                assert_eq!(chi.eval(&b(p)).unwrap(), legendre(&b(a), &b(p)).unwrap(), "a={a} p={p}");
            }
            // nontrivial for a != 1
            let nontrivial = (1..m).any(|x| num_integer::gcd(x, m) == 1 && chi.eval(&b(x)).unwrap().is_minus());
            assert_eq!(nontrivial, a != 1, "a={a}");
        }
    }

    fn units(m: i64) -> Vec<i64> {
        (1..m).filter(|&x| num_integer::gcd(x, m) == 1).collect()
    }

    /// All homomorphisms (Z/mZ)^x -> {+-1}, by brute force over sign tables.
    fn all_quadratic_characters(m: i64) -> Vec<Vec<Sign>> {
        let us = units(m);
        let idx = |x: i64| us.iter().position(|&u| u == x).unwrap();
        (0u64..1 << us.len())
            .map(|mask| {
                us.iter()
                    .enumerate()
                    .map(|(i, _)| Sign::from_bool(mask >> i & 1 == 0))
                    .collect::<Vec<_>>()
            })
            .filter(|t| {
                us.iter().all(|&x| us.iter().all(|&y| t[idx(x * y % m)] == t[idx(x)] * t[idx(y)]))
            })
            .collect()
    }

    #[test]
    fn character_basis_spans_all_quadratic_characters() {
        assert_eq!(
            quadratic_char_basis(&b(8)).unwrap(),
            vec![QuadraticCharacter::lambda4(), QuadraticCharacter::lambda8()]
        );
        assert_eq!(quadratic_char_basis(&b(7)).unwrap(), vec![QuadraticCharacter::lambda(&b(7)).unwrap()]);
        for m in [3i64, 8, 12, 15, 16, 20, 21, 24] {
            let basis = quadratic_char_basis(&b(m)).unwrap();
            let mut spans: Vec<Vec<Sign>> = (0u32..1 << basis.len())
                .map(|mask| {
                    let chi = basis
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .fold(QuadraticCharacter::trivial(), |acc, (_, c)| acc.times(c).unwrap());
                    units(m).iter().map(|&x| chi.eval(&b(x)).unwrap()).collect()
                })
                .collect();
            let mut all = all_quadratic_characters(m);
            spans.sort();
            all.sort();
            assert_eq!(spans, all, "m={m}");
        }
        assert!(quadratic_char_basis(&b(2)).is_err());
    }

    #[test]
    fn character_modulus_and_display() {
        let chi = kronecker_character(&b(-6)).unwrap();
        assert_eq!(chi.modulus(), b(24));
        assert_eq!(chi.to_string(), "lambda8*lambda3");
        let nu = QuadraticCharacter::unramified(&b(5)).unwrap();
        assert!(nu.eval(&b(3)).is_err());
        assert_eq!(nu.eval_local(&Rational::from_integer(b(50)), &b(5)).unwrap(), Sign::Plus);
        assert_eq!(nu.eval_local(&Rational::new(b(3), b(5)), &b(5)).unwrap(), Sign::Minus);
    }

    #[test]
    fn group_product_examples() {
        assert_eq!(group_product_sign(&b(4)).unwrap(), Sign::Minus);
        assert_eq!(group_product_sign(&b(8)).unwrap(), Sign::Plus);
        assert_eq!(group_product_sign(&b(9)).unwrap(), Sign::Minus);
        assert_eq!(group_product_sign(&b(18)).unwrap(), Sign::Minus);
        assert_eq!(group_product_sign(&b(15)).unwrap(), Sign::Plus);
        assert!(group_product_sign(&b(0)).is_err());
    }

    #[test]
    fn binomial_examples() {
        assert!(binomial_primality(7).unwrap());
        assert!(!binomial_primality(9).unwrap());
        assert!(binomial_primality(2).unwrap());
        assert!(!binomial_primality(4).unwrap());
        assert!(binomial_primality(1).is_err());
    }
}
