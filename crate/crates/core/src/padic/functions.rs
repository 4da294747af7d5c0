use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{hensel_lift, ppow, split_int, IntPolynomial, PAdic};
use crate::arith::{modulo, require_odd_prime, require_prime, sqrt_mod_prime_unchecked, vp_split, Rational};
use crate::error::{Error, Result};
use crate::symbols::euler_criterion;

/// The smallest positive quadratic non-residue modulo an odd prime.
pub fn smallest_nonresidue(p: &BigInt) -> Result<BigInt> {
    require_odd_prime("p", p)?;
    let mut u = BigInt::from(2);
    while euler_criterion(&u, p).is_plus() {
        u += 1;
    }
    Ok(u)
}

/// Square root in `Q_p`, or `None` when `x` is not a square.
///
/// For odd `p` the root's first unit digit is at most `(p-1)/2` and it keeps
/// the relative precision of `x`. For `p = 2` the unit part of the root is
/// `1 mod 4` and one digit of precision is lost; the input needs at least
/// three unit digits to decide squareness.
pub fn padic_sqrt(x: &PAdic) -> Result<Option<PAdic>> {
    let p = x.prime();
    let (Some(v), Some(u), Some(k)) = (x.valuation(), x.unit(), x.precision()) else {
        return Ok(Some(x.clone()));
    };
    if v % 2 != 0 {
        return Ok(None);
    }
    let two = BigInt::from(2);
    let f = IntPolynomial::new(vec![-u, BigInt::zero(), BigInt::one()]);
    let root = if *p == two {
        if k < 3 {
            return Err(Error::OutOfRange(format!(
                "need 3 digits to test a 2-adic unit for squareness, have {k}"
            )));
        }
        if modulo(u, &BigInt::from(8)) != BigInt::one() {
            return Ok(None);
        }
        hensel_lift(&f, &PAdic::from_integer(&BigInt::one(), p, 2)?, k - 1)?
    } else {
        match sqrt_mod_prime_unchecked(u, p) {
            None => return Ok(None),
            Some(r0) => hensel_lift(&f, &PAdic::from_integer(&r0, p, 1)?, k)?,
        }
    };
    let unit = root.unit().expect("root of a unit is a unit").clone();
    let prec = root.precision().expect("nonzero");
    Ok(Some(PAdic::new(p, v / 2, &unit, prec)?))
}

/// `omega(a)`, the `(p-1)`-th root of unity congruent to `a` mod `p`,
/// computed as `a^(p^(k-1)) mod p^k`. `omega(0)` is exact zero.
pub fn teichmuller(a: &BigInt, p: &BigInt, k: u32) -> Result<PAdic> {
    require_prime("p", p)?;
    if a.is_negative() || a >= p {
        return Err(Error::OutOfRange(format!("residue {a} not in [0, {p})")));
    }
    if k == 0 {
        return Err(Error::OutOfRange("precision must be at least 1".into()));
    }
    if a.is_zero() {
        return PAdic::zero(p);
    }
    PAdic::new(p, 0, &teichmuller_residue(a, p, k), k)
}

pub(crate) fn teichmuller_residue(a: &BigInt, p: &BigInt, k: u32) -> BigInt {
    a.modpow(&ppow(p, u64::from(k) - 1), &ppow(p, u64::from(k)))
}

/// Splits a unit as `omega(x mod p) * u1` with `u1 = 1 mod p`.
pub fn unit_decompose(x: &PAdic) -> Result<(PAdic, PAdic)> {
    if !x.is_unit() {
        return Err(Error::NotUnit(x.to_string()));
    }
    let p = x.prime();
    let k = x.precision().expect("unit");
    let tau = teichmuller(&modulo(x.unit().expect("unit"), p), p, k)?;
    let u1 = x.checked_div(&tau)?;
    Ok((tau, u1))
}

/// `(v_p(n!), t_n mod p)` where `v = (n - s_n)/(p - 1)` with `s_n` the
/// base-`p` digit sum and `t_n` the product of the factorials of the digits.
/// Then `n! / (-p)^v = t_n (mod p)`.
pub fn vp_factorial(n: u64, p: &BigInt) -> Result<(u64, BigInt)> {
    require_prime("p", p)?;
    let mut m = BigInt::from(n);
    let mut digit_sum = BigInt::zero();
    let mut t = BigInt::one();
    while !m.is_zero() {
        let (q, d) = m.div_rem(p);
        digit_sum += &d;
        let mut i = BigInt::one();
        while i <= d {
            t = modulo(&(t * &i), p);
            i += 1;
        }
        m = q;
    }
    let v = (BigInt::from(n) - digit_sum) / (p - 1u32);
    Ok((v.to_u64().expect("v_p(n!) < n"), modulo(&t, p)))
}

/// `y = sum_(n>0) c_n (4x)^n / n!` with `c_n = prod_(i<n) (1 - 2i)`, the
/// 2-adic root of `(1 + y)^2 = 1 + 8x` with `y = 0 mod 4`.
///
/// The result carries `k` relative digits (`k >= 3`); `v(y) = v(x) + 2`.
/// `x = 0` gives exact zero.
pub fn sqrt_series_1p8x(x: &BigInt, k: u32) -> Result<PAdic> {
    let two = BigInt::from(2);
    if k < 3 {
        return Err(Error::OutOfRange(format!("precision must be at least 3, got {k}")));
    }
    if x.is_zero() {
        return PAdic::zero(&two);
    }
    let vx = split_int(x, &two).0;
    // v(term_n) >= n (1 + v(x)) + 1; stop once that passes v(y) + k
    let goal = vx + 2 + u64::from(k);
    let four_x = Rational::from_integer(x * 4);
    let mut term = Rational::one();
    let mut sum = Rational::zero();
    let mut n: u64 = 1;
    loop {
        // term_n = term_(n-1) * (1 - 2(n-1)) * 4x / n
        term = term * Rational::from_integer(BigInt::from(1 - 2 * (n as i64 - 1))) * &four_x
            / Rational::from_integer(BigInt::from(n));
        sum += &term;
        if (n + 1) * (1 + vx) + 1 >= goal {
            break;
        }
        n += 1;
    }
    let y = PAdic::from_rational(&sum, &two, k)?;
    if y.valuation() != Some(vx as i64 + 2) {
        return Err(Error::Invariant(format!("v(y) should be v(x) + 2 for x = {x}")));
    }
    Ok(y)
}

/// Digit systems for `Z_p`: the standard digits `[0, p)`, or Teichmuller
/// digits where `x = sum omega(a_i) p^i` and `a_i` is reported as its
/// residue in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DigitScheme {
    Standard,
    Teichmuller,
}

impl FromStr for DigitScheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(DigitScheme::Standard),
            "teichmuller" => Ok(DigitScheme::Teichmuller),
            _ => Err(Error::Parse(format!("unknown digit scheme {s:?}"))),
        }
    }
}

/// The first `v + k` digits of an element of `Z_p`, positionally aligned
/// (digit `i` is the coefficient of `p^i`). Exact zero has no digits.
pub fn digits(x: &PAdic, scheme: DigitScheme) -> Result<Vec<BigInt>> {
    let p = x.prime();
    let Some(n) = x.absolute_precision() else {
        return Ok(Vec::new());
    };
    if !x.is_integral() {
        return Err(Error::OutOfRange(format!("{x} has negative valuation")));
    }
    let n = n as u32;
    let mut r = x.residue(n)?;
    let mut out = Vec::with_capacity(n as usize);
    for i in 0..n {
        let a = modulo(&r, p);
        let rep = match scheme {
            DigitScheme::Standard => a.clone(),
            DigitScheme::Teichmuller => teichmuller_residue(&a, p, n - i),
        };
        r = modulo(&((r - rep) / p), &ppow(p, u64::from(n - i - 1)));
        out.push(a);
    }
    Ok(out)
}

/// Inverse of [`digits`]: the element known modulo `p^len`. All-zero digits
/// are indistinguishable from zero; the empty list is exact zero.
pub fn from_digits(p: &BigInt, ds: &[BigInt], scheme: DigitScheme) -> Result<PAdic> {
    require_prime("p", p)?;
    if ds.is_empty() {
        return PAdic::zero(p);
    }
    let n = ds.len() as u32;
    let mut r = BigInt::zero();
    for (i, a) in ds.iter().enumerate() {
        if a.is_negative() || a >= p {
            return Err(Error::OutOfRange(format!("digit {a} not in [0, {p})")));
        }
        let rep = match scheme {
            DigitScheme::Standard => a.clone(),
            DigitScheme::Teichmuller => teichmuller_residue(a, p, n),
        };
        r += rep * ppow(p, i as u64);
    }
    PAdic::from_residue(&r, p, n)
}

/// A class in `Q_p^x / (Q_p^x)^2`, named by a canonical representative.
///
/// For odd `p` the representatives are `1, u, p, up` with `u` the smallest
/// positive non-residue; for `p = 2` they are `+-1, +-5, +-2, +-10`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SquareClass {
    prime: BigInt,
    representative: BigInt,
}

impl SquareClass {
    pub fn prime(&self) -> &BigInt {
        &self.prime
    }

    pub fn representative(&self) -> &BigInt {
        &self.representative
    }

    pub fn is_square(&self) -> bool {
        self.representative.is_one()
    }

    /// The class of `(-1)^e0 5^e1 2^e2` or `u^e1 p^e2`, from the exponents.
    fn from_parts(p: &BigInt, odd_valuation: bool, unit: &BigInt) -> Result<Self> {
        let two = BigInt::from(2);
        let mut rep = if *p == two {
            match modulo(unit, &BigInt::from(8)).to_u8().expect("< 8") {
                1 => BigInt::from(1),
                5 => BigInt::from(5),
                7 => BigInt::from(-1),
                3 => BigInt::from(-5),
                _ => return Err(Error::NotUnit(format!("{unit} at 2"))),
            }
        } else if euler_criterion(unit, p).is_plus() {
            BigInt::one()
        } else {
            smallest_nonresidue(p)?
        };
        if odd_valuation {
            rep *= p;
        }
        Ok(SquareClass { prime: p.clone(), representative: rep })
    }

    /// `1, u, p, up` for odd primes, the representative itself at 2.
    pub fn label(&self) -> String {
        if self.prime == BigInt::from(2) {
            return self.representative.to_string();
        }
        let has_p = self.representative.is_multiple_of(&self.prime);
        let unit = if has_p { &self.representative / &self.prime } else { self.representative.clone() };
        match (!unit.is_one(), has_p) {
            (false, false) => "1",
            (true, false) => "u",
            (false, true) => "p",
            (true, true) => "up",
        }
        .to_string()
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

pub fn square_class(x: &PAdic) -> Result<SquareClass> {
    let p = x.prime();
    let (Some(v), Some(u), Some(k)) = (x.valuation(), x.unit(), x.precision()) else {
        return Err(Error::Zero("x"));
    };
    if *p == BigInt::from(2) && k < 3 {
        return Err(Error::OutOfRange(format!(
            "need 3 digits to classify a 2-adic unit, have {k}"
        )));
    }
    SquareClass::from_parts(p, v % 2 != 0, u)
}

/// Square class of a nonzero rational viewed in `Q_p`.
pub fn square_class_rational(x: &Rational, p: &BigInt) -> Result<SquareClass> {
    require_prime("p", p)?;
    let (v, u) = vp_split(x, p).ok_or(Error::Zero("x"))?;
    // n/d and n d differ by the square d^2
    SquareClass::from_parts(p, v % 2 != 0, &(u.numer() * u.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};
    use proptest::prelude::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn small_primes() -> impl Strategy<Value = i64> {
        prop_oneof![Just(2i64), Just(3), Just(5), Just(7), Just(11), Just(13)]
    }

    #[test]
    fn sqrt_examples() {
        let r = padic_sqrt(&PAdic::from_integer(&b(2), &b(7), 2).unwrap()).unwrap().unwrap();
        assert_eq!(r.residue(2).unwrap(), b(10));
        let r = padic_sqrt(&PAdic::from_integer(&b(17), &b(2), 5).unwrap()).unwrap().unwrap();
        assert_eq!(r.residue(4).unwrap(), b(9));
        assert_eq!(padic_sqrt(&PAdic::from_integer(&b(5), &b(2), 8).unwrap()).unwrap(), None);
        assert_eq!(padic_sqrt(&PAdic::from_integer(&b(3), &b(7), 8).unwrap()).unwrap(), None);
        assert_eq!(padic_sqrt(&PAdic::from_integer(&b(14), &b(7), 8).unwrap()).unwrap(), None);
        let r = padic_sqrt(&PAdic::from_rational(&ratio(4, 49), &b(7), 6).unwrap()).unwrap().unwrap();
        assert_eq!(r.valuation(), Some(-1));
        assert!(padic_sqrt(&PAdic::from_integer(&b(1), &b(2), 2).unwrap()).is_err());
    }

    #[test]
    fn teichmuller_examples() {
        assert!(teichmuller(&b(0), &b(5), 4).unwrap().is_zero());
        assert_eq!(teichmuller(&b(1), &b(5), 4).unwrap().unit(), Some(&b(1)));
        assert_eq!(teichmuller(&b(2), &b(5), 2).unwrap().residue(2).unwrap(), b(7));
        assert!(teichmuller(&b(5), &b(5), 2).is_err());
    }

    #[test]
    fn teichmuller_is_the_fixed_point_of_frobenius() {
        // oracle: the Hensel root of T^p - T near a
        for p in [3i64, 5, 7, 13] {
            for a in 1..p {
                let mut coeffs = vec![b(0), b(-1)];
                coeffs.resize(p as usize, b(0));
                coeffs.push(b(1));
                let f = IntPolynomial::new(coeffs);
                let x0 = PAdic::from_integer(&b(a), &b(p), 1).unwrap();
                let oracle = hensel_lift(&f, &x0, 6).unwrap();
                assert_eq!(teichmuller(&b(a), &b(p), 6).unwrap(), oracle, "p={p} a={a}");
            }
        }
    }

    #[test]
    fn teichmuller_multiplicative_and_roots_of_unity() {
        for p in [3i64, 5, 7, 13] {
            let k = 6;
            for a in 0..p {
                let wa = teichmuller(&b(a), &b(p), k).unwrap();
                if a != 0 {
                    let r = wa.pow(p - 1).unwrap();
                    assert!(r.agrees_with(&int(1)));
                }
                for c in 0..p {
                    let wc = teichmuller(&b(c), &b(p), k).unwrap();
                    let wac = teichmuller(&b(a * c % p), &b(p), k).unwrap();
                    assert_eq!(wa.checked_mul(&wc).unwrap(), wac);
                }
            }
        }
    }

    #[test]
    fn unit_decompose_examples() {
        let x = PAdic::from_integer(&b(7), &b(5), 2).unwrap();
        let (tau, u1) = unit_decompose(&x).unwrap();
        assert_eq!(tau.residue(2).unwrap(), b(7));
        assert_eq!(u1.residue(2).unwrap(), b(1));
        let y = PAdic::from_integer(&b(11), &b(5), 6).unwrap();
        let (tau, u1) = unit_decompose(&y).unwrap();
        assert_eq!(tau.unit(), Some(&b(1)));
        assert_eq!(u1, y);
        assert!(unit_decompose(&PAdic::from_integer(&b(10), &b(5), 6).unwrap()).is_err());
    }

    #[test]
    fn vp_factorial_examples() {
        assert_eq!(vp_factorial(0, &b(7)).unwrap(), (0, b(1)));
        assert_eq!(vp_factorial(10, &b(2)).unwrap().0, 8);
    }

    #[test]
    fn vp_factorial_matches_floor_sum() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            for n in 0..=10_000u64 {
                let mut floor_sum = 0;
                let mut q = p;
                while q <= n {
                    floor_sum += n / q;
                    q *= p;
                }
                assert_eq!(vp_factorial(n, &b(p as i64)).unwrap().0, floor_sum, "n={n} p={p}");
            }
        }
    }

    #[test]
    fn vp_factorial_unit_matches_factorial() {
        for p in [2i64, 3, 5, 7, 11, 13] {
            let mut fact = BigInt::one();
            for n in 0..=300u64 {
                if n > 0 {
                    fact *= n;
                }
                let (v, t) = vp_factorial(n, &b(p)).unwrap();
                let q = &fact / num_traits::pow(b(-p), v as usize);
                assert_eq!(modulo(&q, &b(p)), t, "n={n} p={p}");
            }
        }
    }

    #[test]
    fn sqrt_series_examples() {
        assert!(sqrt_series_1p8x(&b(0), 5).unwrap().is_zero());
        let y = sqrt_series_1p8x(&b(1), 5).unwrap();
        assert!(y.agrees_with(&int(-4)));
        let y = sqrt_series_1p8x(&b(3), 5).unwrap();
        assert!(y.agrees_with(&int(4)));
        assert!(sqrt_series_1p8x(&b(1), 2).is_err());
    }

    proptest! {
        #[test]
        fn sqrt_series_agrees_with_padic_sqrt(x in -100_000i64..100_000, k in 3u32..20) {
            prop_assume!(x != 0);
            let y = sqrt_series_1p8x(&b(x), k).unwrap();
            let one = PAdic::from_integer(&b(1), &b(2), 64).unwrap();
            let root = y.checked_add(&one).unwrap();
            let target = PAdic::from_integer(&b(1 + 8 * x), &b(2), k + 3).unwrap();
            let r = padic_sqrt(&target).unwrap().unwrap();
            // both are the root = 1 mod 4; compare to the coarser precision
            let n = root.absolute_precision().unwrap().min(r.absolute_precision().unwrap());
            prop_assert_eq!(root.residue(n as u32).unwrap(), r.residue(n as u32).unwrap());
            prop_assert!(modulo(&y.residue(2).unwrap(), &b(4)).is_zero());
        }

        #[test]
        fn sqrt_squares_back(p in small_primes(), v in -3i64..4, u in 1i64..1_000_000, k in 3u32..16) {
            prop_assume!(u % p != 0);
            let x = PAdic::new(&b(p), v, &b(u), k).unwrap();
            let class = square_class(&x).unwrap();
            match padic_sqrt(&x).unwrap() {
                Some(r) => {
                    prop_assert!(class.is_square());
                    let sq = r.checked_mul(&r).unwrap();
                    prop_assert_eq!(x.truncate(sq.precision().unwrap()), sq);
                    let d0 = modulo(r.unit().unwrap(), &b(p));
                    if p == 2 {
                        prop_assert_eq!(modulo(r.unit().unwrap(), &b(4)), b(1));
                    } else {
                        prop_assert!(d0 <= b((p - 1) / 2));
                    }
                }
                None => prop_assert!(!class.is_square()),
            }
        }

        #[test]
        fn unit_decompose_roundtrip(p in small_primes(), u in 1i64..1_000_000, k in 1u32..12) {
            prop_assume!(u % p != 0);
            let x = PAdic::new(&b(p), 0, &b(u), k).unwrap();
            let (tau, u1) = unit_decompose(&x).unwrap();
            prop_assert_eq!(tau.checked_mul(&u1).unwrap(), x);
            prop_assert_eq!(modulo(u1.unit().unwrap(), &b(p)), b(1));
            let t = tau.pow(p - 1).unwrap();
            prop_assert_eq!(t.unit(), Some(&b(1)));
        }

        #[test]
        fn digits_roundtrip(p in small_primes(), v in 0i64..4, u in 1i64..10_000_000, k in 1u32..12, teich in any::<bool>()) {
            prop_assume!(u % p != 0);
            let scheme = if teich { DigitScheme::Teichmuller } else { DigitScheme::Standard };
            let x = PAdic::new(&b(p), v, &b(u), k).unwrap();
            let ds = digits(&x, scheme).unwrap();
            prop_assert_eq!(ds.len() as i64, v + k as i64);
            let y = from_digits(&b(p), &ds, scheme).unwrap();
            prop_assert_eq!(&y, &x);
            prop_assert_eq!(digits(&y, scheme).unwrap(), ds);
        }

        #[test]
        fn u_n_structure(p in small_primes(), n in 1u32..6, a in 1i64..100_000) {
            prop_assume!(a % p != 0);
            prop_assume!(p != 2 || n >= 2);
            let pn = num_traits::pow(b(p), n as usize);
            let x = BigInt::one() + &pn * a;
            let xp = x.pow(p as u32);
            let m1 = &pn * p;
            let m2 = &m1 * p;
            prop_assert!(modulo(&(&xp - 1), &m1).is_zero());
            prop_assert!(!modulo(&(&xp - 1), &m2).is_zero());
        }
    }

    #[test]
    fn digit_examples() {
        let x = PAdic::from_integer(&b(-1), &b(3), 4).unwrap();
        assert_eq!(digits(&x, DigitScheme::Standard).unwrap(), vec![b(2); 4]);
        let x = PAdic::from_integer(&b(5), &b(5), 3).unwrap();
        assert_eq!(digits(&x, DigitScheme::Standard).unwrap(), vec![b(0), b(1), b(0), b(0)]);
        // -1 is itself a Teichmuller representative
        let x = PAdic::from_integer(&b(-1), &b(5), 4).unwrap();
        assert_eq!(digits(&x, DigitScheme::Teichmuller).unwrap(), vec![b(4), b(0), b(0), b(0)]);
        let y = PAdic::from_rational(&ratio(1, 5), &b(5), 4).unwrap();
        assert!(digits(&y, DigitScheme::Standard).is_err());
        assert_eq!(from_digits(&b(5), &[b(0), b(0)], DigitScheme::Standard), Err(Error::PrecisionLoss));
    }

    #[test]
    fn square_class_examples() {
        let c = square_class(&PAdic::from_integer(&b(17), &b(2), 8).unwrap()).unwrap();
        assert!(c.is_square());
        let c = square_class_rational(&int(14), &b(7)).unwrap();
        assert_eq!(c.label(), "p");
        assert_eq!(c.representative(), &b(7));
        let c = square_class_rational(&int(3), &b(7)).unwrap();
        assert_eq!((c.label(), c.representative().clone()), ("u".to_string(), b(3)));
        let c = square_class_rational(&int(21), &b(7)).unwrap();
        assert_eq!(c.label(), "up");
        let c = square_class_rational(&ratio(-2, 3), &b(2)).unwrap();
        assert_eq!(c.representative(), &b(10));
        assert_eq!(smallest_nonresidue(&b(7)).unwrap(), b(3));
        assert_eq!(smallest_nonresidue(&b(41)).unwrap(), b(3));
    }

    #[test]
    fn square_classes_of_q2_are_eight() {
        let mut seen = std::collections::BTreeSet::new();
        for n in 1i64..200 {
            for s in [1, -1] {
                seen.insert(square_class_rational(&int(s * n), &b(2)).unwrap().representative().clone());
            }
        }
        let want: std::collections::BTreeSet<_> = [1, -1, 5, -5, 2, -2, 10, -10].map(b).into_iter().collect();
        assert_eq!(seen, want);
    }

    #[test]
    fn square_class_respects_squares() {
        for p in [2i64, 3, 5, 7, 11, 13] {
            for x in 1i64..60 {
                for c in 1i64..12 {
                    let a = square_class_rational(&int(x), &b(p)).unwrap();
                    let bb = square_class_rational(&ratio(x * c * c, 1), &b(p)).unwrap();
                    assert_eq!(a, bb);
                }
            }
        }
    }
}
