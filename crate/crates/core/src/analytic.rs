//! Bernoulli numbers, power sums, the `p`-adic fractional part and local
//! root numbers of quadratic characters.
//!
//! Root numbers are computed in `f64` complex arithmetic. The fourth root of
//! unity `i` is fixed as `(0, +1)`, so `W_inf(sign) = -i`.

use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::arith::{factorize, is_prime, mod_inv, modulo, vp_split, Place, Rational};
use crate::error::{Error, Result};
use crate::hilbert::character_of_extension;
use crate::padic::PAdic;
use crate::sign::Sign;
use crate::symbols::QuadraticCharacter;

/// `B_0, ..., B_n` from `sum_{j=0}^{k} C(k+1, j) B_j = 0`, with `B_1 = -1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut bs: Vec<Rational> = Vec::with_capacity(n + 1);
    bs.push(Rational::one());
    for k in 1..=n {
        if k > 1 && k % 2 == 1 {
            bs.push(Rational::zero());
            continue;
        }
        // binomials C(k+1, j) for j = 0..k
        let mut c = BigInt::one();
        let mut acc = Rational::zero();
        for (j, b) in bs.iter().enumerate() {
            acc += b * Rational::from_integer(c.clone());
            c = c * BigInt::from(k + 1 - j) / BigInt::from(j + 1);
        }
        bs.push(-acc / Rational::from_integer(BigInt::from(k + 1)));
    }
    bs
}

pub fn bernoulli(k: usize) -> Rational {
    bernoulli_numbers(k).pop().expect("nonempty")
}

/// Primes `l` with `(l - 1) | k`.
pub fn staudt_primes(k: u64) -> Vec<u64> {
    let mut ls: Vec<u64> = (1..=k)
        .filter(|d| k.is_multiple_of(*d) && is_prime(&BigInt::from(d + 1)))
        .map(|d| d + 1)
        .collect();
    ls.sort_unstable();
    ls
}

/// `W_k = B_k + sum_{(l-1)|k} 1/l` for even `k >= 2`. Errors with
/// [`Error::Invariant`] if the sum is not an integer.
pub fn von_staudt_w(k: u64) -> Result<BigInt> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::OutOfRange(format!("k = {k} must be even and at least 2")));
    }
    let idx = usize::try_from(k).map_err(|_| Error::OutOfRange(format!("k = {k} too large")))?;
    von_staudt_from(k, &bernoulli(idx))
}

fn von_staudt_from(k: u64, bk: &Rational) -> Result<BigInt> {
    let mut w = bk.clone();
    for l in staudt_primes(k) {
        w += Rational::new(BigInt::one(), BigInt::from(l));
    }
    if !w.is_integer() {
        return Err(Error::Invariant(format!("W_{k} = {w} is not an integer")));
    }
    Ok(w.to_integer())
}

/// `W_2, W_4, ..., W_k` sharing one Bernoulli table.
pub fn von_staudt_scan(max_k: u64) -> Result<Vec<(u64, BigInt)>> {
    let n = usize::try_from(max_k).map_err(|_| Error::OutOfRange(format!("k = {max_k} too large")))?;
    let bs = bernoulli_numbers(n);
    (2..=max_k)
        .step_by(2)
        .map(|k| Ok((k, von_staudt_from(k, &bs[k as usize])?)))
        .collect()
}

/// `0^k + 1^k + ... + (n-1)^k` by plain summation, with `0^0 = 1` as in
/// the coefficients of `1 + e^T + ... + e^((n-1)T)`.
pub fn power_sum_direct(k: u32, n: u64) -> BigInt {
    (0..n).map(|m| BigInt::from(m).pow(k)).sum()
}

/// Largest `n` for which [`power_sum`] also sums directly.
pub const POWER_SUM_CHECK_LIMIT: u64 = 100_000;

/// `S_k(n) = 1^k + ... + (n-1)^k` (and `S_0(n) = n`) from
/// `sum_{m=0}^{k} C(k, m) B_m n^{k+1-m} / (k+1-m)`, cross-checked against
/// direct summation when `n <= POWER_SUM_CHECK_LIMIT`.
pub fn power_sum(k: u32, n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    let bs = bernoulli_numbers(k as usize);
    let nn = BigInt::from(n);
    let mut c = BigInt::one();
    let mut s = Rational::zero();
    for (m, b) in bs.iter().enumerate() {
        let e = k as usize + 1 - m;
        s += b * Rational::new(&c * nn.clone().pow(e as u32), BigInt::from(e));
        c = c * BigInt::from(k as usize - m) / BigInt::from(m + 1);
    }
    if !s.is_integer() {
        return Err(Error::Invariant(format!("S_{k}({n}) = {s} is not an integer")));
    }
    let s = s.to_integer();
    if n <= POWER_SUM_CHECK_LIMIT && s != power_sum_direct(k, n) {
        return Err(Error::Invariant(format!("Bernoulli and direct S_{k}({n}) disagree")));
    }
    Ok(s)
}

/// `<x>_p`: the part `sum_{n<0} a_n p^n` of the expansion of `x`, a rational
/// in `[0, 1)` whose denominator is a power of `p`.
pub fn p_frac_part(x: &Rational, p: &BigInt) -> Result<Rational> {
    if !is_prime(p) {
        return Err(Error::not_prime("p", p));
    }
    let Some((v, _)) = vp_split(x, p) else {
        return Ok(Rational::zero());
    };
    if v >= 0 {
        return Ok(Rational::zero());
    }
    let pm = p.clone().pow((-v) as u64);
    // x = n / (p^m d) with p not dividing d
    let d = x.denom() / &pm;
    let inv = mod_inv(&d, &pm).ok_or_else(|| Error::Invariant("denominator not prime to p".into()))?;
    Ok(Rational::new(modulo(&(x.numer() * inv), &pm), pm))
}

/// `<x>_p` for a `p`-adic number, which needs the digits below `p^0`.
pub fn p_frac_part_padic(x: &PAdic) -> Result<Rational> {
    match x.absolute_precision() {
        Some(n) if n < 0 => Err(Error::PrecisionLoss),
        _ => p_frac_part(&x.to_rational(), x.prime()),
    }
}

/// A character of `Q_v^x` of order dividing 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalCharacter {
    /// `x -> sign(x)^r` on `R^x`.
    Real { r: bool },
    /// A character of `Q_p^x`; `chi` may carry `nu_p` and the primitive
    /// factors living at `p`.
    Finite { prime: BigInt, chi: QuadraticCharacter },
}

impl LocalCharacter {
    pub fn trivial(v: &Place) -> Self {
        match v {
            Place::Infinite => LocalCharacter::Real { r: false },
            Place::Finite(p) => LocalCharacter::Finite {
                prime: p.clone(),
                chi: QuadraticCharacter::trivial(),
            },
        }
    }

    /// `chi_v(x) = (x, d)_v`, the character of `Q_v(sqrt d)`.
    pub fn of_extension(d: &Rational, v: &Place) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::Zero("d"));
        }
        Ok(match v {
            Place::Infinite => LocalCharacter::Real { r: d.is_negative() },
            Place::Finite(p) => LocalCharacter::Finite {
                prime: p.clone(),
                chi: character_of_extension(d, p)?,
            },
        })
    }

    pub fn place(&self) -> Place {
        match self {
            LocalCharacter::Real { .. } => Place::Infinite,
            LocalCharacter::Finite { prime, .. } => Place::Finite(prime.clone()),
        }
    }

    pub fn eval(&self, x: &Rational) -> Result<Sign> {
        if x.is_zero() {
            return Err(Error::Zero("x"));
        }
        match self {
            LocalCharacter::Real { r } => Ok(if *r && x.is_negative() { Sign::Minus } else { Sign::Plus }),
            LocalCharacter::Finite { prime, chi } => chi.eval_local(x, prime),
        }
    }
}

impl fmt::Display for LocalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalCharacter::Real { r: false } => f.write_str("1"),
            LocalCharacter::Real { r: true } => f.write_str("sign"),
            LocalCharacter::Finite { chi, .. } => write!(f, "{chi}"),
        }
    }
}

/// `a(chi)`: the least `n` with `chi` trivial on `U_n` (`U_0` the units).
///
/// A character of order 2 kills `U_1` for odd `p` and `U_3` at 2, so
/// units modulo `p^2` (resp. `2^4`) see every `U_n / U_(n+1)` that matters.
pub fn conductor_exponent(chi: &LocalCharacter) -> Result<u32> {
    let LocalCharacter::Finite { prime: p, .. } = chi else {
        return Err(Error::OutOfRange("conductor exponent needs a finite place".into()));
    };
    let top: u32 = if *p == BigInt::from(2) { 4 } else { 2 };
    let m = p.clone().pow(top);
    let m64 = m.to_u64().ok_or_else(|| Error::OutOfRange(format!("prime {p} too large")))?;
    'level: for n in 0..top {
        let pn = p.clone().pow(n);
        // x runs over U_n modulo p^top
        let mut x = BigInt::one();
        while x < BigInt::from(m64) {
            if !x.is_multiple_of(p) && chi.eval(&Rational::from_integer(x.clone()))?.is_minus() {
                continue 'level;
            }
            x += &pn;
        }
        return Ok(n);
    }
    Err(Error::Invariant(format!("{chi} is not trivial on U_{top}")))
}

/// `W_p(chi)` with the default `gamma = p^a(chi)`; `W_inf = i^(-r)`.
pub fn local_root_number(chi: &LocalCharacter) -> Result<Complex64> {
    local_root_number_with(chi, &BigInt::one())
}

/// `W_p(chi)` with `gamma = p^a(chi) * g` for a `p`-adic unit `g`:
///
/// `chi(gamma) p^(-a/2) sum_{x in (Z/p^a)^x} chi(x)^(-1) e^(2 pi i <x/gamma>_p)`.
///
/// Terms are added in ascending order of `x`.
pub fn local_root_number_with(chi: &LocalCharacter, g: &BigInt) -> Result<Complex64> {
    let p = match chi {
        LocalCharacter::Real { r: false } => return Ok(Complex64::new(1.0, 0.0)),
        LocalCharacter::Real { r: true } => return Ok(Complex64::new(0.0, -1.0)),
        LocalCharacter::Finite { prime, .. } => prime,
    };
    if g.is_zero() || g.is_multiple_of(p) {
        return Err(Error::NotUnit(format!("gamma multiplier {g} at {p}")));
    }
    let a = conductor_exponent(chi)?;
    let gamma = Rational::from_integer(p.clone().pow(a) * g);
    let f = p.clone().pow(a);
    let mut sum = Complex64::zero();
    let mut x = BigInt::one();
    // (Z_p / Z_p)^x is the single class of 1
    let bound = if a == 0 { BigInt::from(2) } else { f.clone() };
    while x < bound {
        if a == 0 || !x.is_multiple_of(p) {
            let xr = Rational::from_integer(x.clone());
            let frac = p_frac_part(&(&xr / &gamma), p)?;
            let angle = 2.0 * PI * rational_to_f64(&frac);
            let c = chi.eval(&xr)?.to_i32() as f64;
            sum += Complex64::from_polar(1.0, angle) * c;
        }
        x += 1;
    }
    let scale = chi.eval(&gamma)?.to_i32() as f64 / (p.to_f64().ok_or_else(|| Error::OutOfRange(format!("prime {p} too large")))?).powf(a as f64 / 2.0);
    Ok(sum * scale)
}

fn rational_to_f64(x: &Rational) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}

/// `W_v(chi_v)` for the characters of `Q_v(sqrt d)` over the places
/// `{inf, 2, p | d}`; every other place is unramified and contributes 1.
pub fn root_number_factors(d: &BigInt) -> Result<Vec<(Place, LocalCharacter, Complex64)>> {
    if d.is_zero() {
        return Err(Error::Zero("d"));
    }
    let mut places = vec![Place::Infinite, Place::Finite(BigInt::from(2))];
    for (q, e) in factorize(d)?.factors() {
        if *e > 1 {
            return Err(Error::not_squarefree("d", d));
        }
        if *q != BigInt::from(2) {
            places.push(Place::Finite(q.clone()));
        }
    }
    let dq = Rational::from_integer(d.clone());
    places
        .into_iter()
        .map(|v| {
            let chi = LocalCharacter::of_extension(&dq, &v)?;
            let w = local_root_number(&chi)?;
            Ok((v, chi, w))
        })
        .collect()
}

/// `prod_v W_v(chi_v)` for squarefree `d`; equal to 1 up to rounding.
pub fn root_number_product(d: &BigInt) -> Result<Complex64> {
    Ok(root_number_factors(d)?.into_iter().map(|(_, _, w)| w).product())
}

/// `re+im·i` with at most 12 significant digits per part; parts below
/// `1e-12` in size print as 0.
pub fn format_complex(z: Complex64) -> String {
    let im = sig12(z.im);
    let im = if im.starts_with('-') { im } else { format!("+{im}") };
    format!("{}{}·i", sig12(z.re), im)
}

fn sig12(x: f64) -> String {
    if x.abs() < 1e-12 {
        return "0".into();
    }
    let digits = (11 - x.abs().log10().floor() as i32).max(0) as usize;
    let s = format!("{x:.digits$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio, valuation};
    use crate::hilbert::hilbert_symbol;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    /// `B_n = n! c_n` where `sum c_n T^n` inverts `(e^T - 1)/T`.
    fn bernoulli_by_series(n: usize) -> Vec<Rational> {
        let mut fact = vec![BigInt::one()];
        for j in 1..=n + 1 {
            let f = &fact[j - 1] * BigInt::from(j);
            fact.push(f);
        }
        // (e^T - 1)/T = sum T^j / (j+1)!
        let e: Vec<Rational> = (0..=n).map(|j| Rational::new(BigInt::one(), fact[j + 1].clone())).collect();
        let mut c: Vec<Rational> = vec![Rational::one()];
        for m in 1..=n {
            let s: Rational = (1..=m).map(|j| &e[j] * &c[m - j]).sum();
            c.push(-s);
        }
        c.iter().enumerate().map(|(m, cm)| cm * Rational::from_integer(fact[m].clone())).collect()
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), ratio(-1, 2));
        assert_eq!(bernoulli(2), ratio(1, 6));
        assert_eq!(bernoulli(3), int(0));
        assert_eq!(bernoulli(4), ratio(-1, 30));
        assert_eq!(bernoulli(12), ratio(-691, 2730));
    }

    #[test]
    fn bernoulli_matches_series_inversion() {
        let rec = bernoulli_numbers(60);
        let ser = bernoulli_by_series(60);
        assert_eq!(rec, ser);
        for k in (3..=60).step_by(2) {
            assert!(rec[k].is_zero());
        }
    }

    #[test]
    fn von_staudt_examples() {
        assert_eq!(von_staudt_w(2).unwrap(), b(1));
        assert_eq!(von_staudt_w(4).unwrap(), b(1));
        assert_eq!(staudt_primes(12), vec![2, 3, 5, 7, 13]);
        assert!(von_staudt_w(3).is_err());
        assert!(von_staudt_w(0).is_err());
        let scan = von_staudt_scan(60).unwrap();
        assert_eq!(scan.len(), 30);
        for (k, w) in scan {
            assert_eq!(von_staudt_w(k).unwrap(), w);
        }
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(power_sum(1, 3).unwrap(), b(3));
        assert_eq!(power_sum(2, 4).unwrap(), b(14));
        assert_eq!(power_sum(0, 1).unwrap(), b(1));
        assert_eq!(power_sum(0, 5).unwrap(), b(5));
        assert!(power_sum(2, 0).is_err());
        for k in 0..=10 {
            for n in 1..=100 {
                assert_eq!(power_sum(k, n).unwrap(), power_sum_direct(k, n), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn power_sums_converge_to_bernoulli() {
        for p in [2i64, 3, 5] {
            for k in [2u32, 4, 6] {
                let bk = bernoulli(k as usize);
                let mut last = i64::MIN;
                for r in 1..=5u32 {
                    let pr = (p as u64).pow(r);
                    let q = Rational::new(power_sum(k, pr).unwrap(), BigInt::from(pr)) - &bk;
                    let v = valuation(&q, &b(p)).unwrap_or(i64::MAX);
                    assert!(v > last, "p={p} k={k} r={r}: {v} after {last}");
                    last = v;
                }
            }
        }
    }

    #[test]
    fn frac_part_examples() {
        for p in [2, 3, 5, 7] {
            assert_eq!(p_frac_part(&int(3), &b(p)).unwrap(), int(0));
        }
        assert_eq!(p_frac_part(&ratio(1, 2), &b(2)).unwrap(), ratio(1, 2));
        assert_eq!(p_frac_part(&ratio(7, 4), &b(2)).unwrap(), ratio(3, 4));
        assert_eq!(p_frac_part(&ratio(-1, 3), &b(3)).unwrap(), ratio(2, 3));
        assert_eq!(p_frac_part(&ratio(1, 6), &b(3)).unwrap(), ratio(2, 3));
        assert!(p_frac_part(&ratio(1, 6), &b(4)).is_err());
        let x = PAdic::from_rational(&ratio(7, 4), &b(2), 10).unwrap();
        assert_eq!(p_frac_part_padic(&x).unwrap(), ratio(3, 4));
    }

    proptest! {
        #[test]
        fn frac_part_properties(
            p in prop_oneof![Just(2i64), Just(3), Just(5), Just(7), Just(11)],
            n1 in -10_000i64..10_000, e1 in 0u32..5, d1 in 1i64..50,
            n2 in -10_000i64..10_000, e2 in 0u32..5, d2 in 1i64..50,
        ) {
            let pp = b(p);
            let x = Rational::new(b(n1), b(d1) * pp.clone().pow(e1));
            let y = Rational::new(b(n2), b(d2) * pp.clone().pow(e2));
            let fx = p_frac_part(&x, &pp).unwrap();
            let fy = p_frac_part(&y, &pp).unwrap();
            prop_assert!(fx >= int(0) && fx < int(1));
            let (_, dd) = crate::padic::split_int(fx.denom(), &pp);
            prop_assert!(dd.is_one());
            if !(&x - &fx).is_zero() {
                prop_assert!(valuation(&(&x - &fx), &pp).unwrap() >= 0);
            }
            // additive modulo Z
            let fs = p_frac_part(&(&x + &y), &pp).unwrap();
            prop_assert!((fs - fx - fy).is_integer());
        }
    }

    fn fin(p: i64, chi: QuadraticCharacter) -> LocalCharacter {
        LocalCharacter::Finite { prime: b(p), chi }
    }

    #[test]
    fn conductor_exponents() {
        assert_eq!(conductor_exponent(&fin(5, QuadraticCharacter::unramified(&b(5)).unwrap())).unwrap(), 0);
        assert_eq!(conductor_exponent(&fin(2, QuadraticCharacter::unramified(&b(2)).unwrap())).unwrap(), 0);
        assert_eq!(conductor_exponent(&fin(7, QuadraticCharacter::trivial())).unwrap(), 0);
        assert_eq!(conductor_exponent(&fin(7, QuadraticCharacter::lambda(&b(7)).unwrap())).unwrap(), 1);
        assert_eq!(conductor_exponent(&fin(2, QuadraticCharacter::lambda4())).unwrap(), 2);
        assert_eq!(conductor_exponent(&fin(2, QuadraticCharacter::lambda8())).unwrap(), 3);
        let l48 = QuadraticCharacter::lambda4().times(&QuadraticCharacter::lambda8()).unwrap();
        assert_eq!(conductor_exponent(&fin(2, l48)).unwrap(), 3);
        assert!(conductor_exponent(&LocalCharacter::Real { r: true }).is_err());
    }

    #[test]
    fn characters_factor_through_the_conductor() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for p in [2i64, 3, 5, 7, 11, 13] {
            for (_, chi) in crate::hilbert::ext_char_correspondence(&b(p)).unwrap() {
                let chi = fin(p, chi);
                let a = conductor_exponent(&chi).unwrap();
                let f = b(p).pow(a);
                let mut n = 0;
                while n < 100 {
                    let x = b(rng.gen_range(1..1_000_000));
                    if x.is_multiple_of(&b(p)) {
                        continue;
                    }
                    n += 1;
                    let direct = chi.eval(&Rational::from_integer(x.clone())).unwrap();
                    let via = if a == 0 {
                        Sign::Plus
                    } else {
                        chi.eval(&Rational::from_integer(modulo(&x, &f))).unwrap()
                    };
                    assert_eq!(direct, via, "{chi} at {p}, x = {x}");
                }
            }
        }
    }

    fn close(z: Complex64, w: Complex64, tol: f64) -> bool {
        (z - w).norm() < tol
    }

    #[test]
    fn root_number_examples() {
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        assert_eq!(local_root_number(&LocalCharacter::Real { r: false }).unwrap(), one);
        assert_eq!(local_root_number(&LocalCharacter::Real { r: true }).unwrap(), -i);
        let nu = fin(3, QuadraticCharacter::unramified(&b(3)).unwrap());
        assert!(close(local_root_number(&nu).unwrap(), one, 1e-12));
        // chi of Q_2(sqrt -1) is lambda4 and W_2 = i
        let chi = LocalCharacter::of_extension(&int(-1), &Place::Finite(b(2))).unwrap();
        assert!(close(local_root_number(&chi).unwrap(), i, 1e-9));
        assert!(close(root_number_product(&b(1)).unwrap(), one, 1e-12));
        assert!(close(root_number_product(&b(-1)).unwrap(), one, 1e-6));
        assert!(root_number_product(&b(12)).is_err());
        assert!(root_number_product(&b(0)).is_err());
    }

    #[test]
    fn root_numbers_have_modulus_one_and_ignore_gamma() {
        for p in (3..100).filter(|n| is_prime(&b(*n))) {
            let table = crate::hilbert::ext_char_correspondence(&b(p)).unwrap();
            for (_, chi) in table {
                let chi = fin(p, chi);
                let w = local_root_number(&chi).unwrap();
                assert!((w.norm() - 1.0).abs() < 1e-9, "{chi} at {p}: {w}");
                for g in [2i64, p - 1, p + 2] {
                    let g = if g % p == 0 { g + 1 } else { g };
                    let wg = local_root_number_with(&chi, &b(g)).unwrap();
                    assert!(close(w, wg, 1e-9), "{chi} at {p}, gamma unit {g}");
                }
            }
        }
        for (_, chi) in crate::hilbert::ext_char_correspondence(&b(2)).unwrap() {
            let chi = fin(2, chi);
            let w = local_root_number(&chi).unwrap();
            assert!((w.norm() - 1.0).abs() < 1e-9);
            for g in [3i64, 5, 7] {
                assert!(close(w, local_root_number_with(&chi, &b(g)).unwrap(), 1e-9));
            }
        }
        assert!(local_root_number_with(&fin(3, QuadraticCharacter::lambda(&b(3)).unwrap()), &b(6)).is_err());
    }

    #[test]
    fn root_number_product_scan() {
        for d in -50i64..=50 {
            if d == 0 || !crate::arith::is_squarefree(&b(d)).unwrap() {
                continue;
            }
            let w = root_number_product(&b(d)).unwrap();
            assert!(close(w, Complex64::new(1.0, 0.0), 1e-6), "d = {d}: {w}");
        }
    }

    #[test]
    fn extension_characters_are_hilbert_symbols() {
        for d in [-7i64, -2, 3, 5, 6, 10, -15] {
            let dq = int(d);
            for p in [2i64, 3, 5, 7] {
                let v = Place::Finite(b(p));
                let chi = LocalCharacter::of_extension(&dq, &v).unwrap();
                for x in [-10i64, -3, -1, 1, 2, 3, 5, 6, 7, 12, 14] {
                    assert_eq!(chi.eval(&int(x)).unwrap(), hilbert_symbol(&int(x), &dq, &v).unwrap());
                }
            }
        }
    }

    #[test]
    fn complex_format() {
        assert_eq!(format_complex(Complex64::new(1.0, 0.0)), "1+0·i");
        assert_eq!(format_complex(Complex64::new(0.0, -1.0)), "0-1·i");
        assert_eq!(format_complex(Complex64::new(1.0 - 1e-15, 3e-16)), "1+0·i");
        assert_eq!(format_complex(Complex64::new(0.5, 1.0 / 3.0)), "0.5+0.333333333333·i");
        assert_eq!(format_complex(Complex64::new(-123.456, 0.0)), "-123.456+0·i");
    }
}
