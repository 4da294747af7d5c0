use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ppow, residue_valuation, split_int, PAdic};
use crate::arith::{mod_inv, modulo};
use crate::error::{Error, Result};

/// A polynomial with integer coefficients, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_mod(&self, x: &BigInt, m: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| modulo(&(acc * x + c), m))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * i)
                .collect(),
        )
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("T")?,
                (1, false) => write!(f, "{a}*T")?,
                (_, true) => write!(f, "T^{i}")?,
                (_, false) => write!(f, "{a}*T^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Lifts an approximate root `x0` of `f` to a root `xi` known to
/// `target_precision` relative digits.
///
/// With `m = v_p(f(x0))` and `delta = v_p(f'(x0))` the hypothesis is
/// `m > 2 delta`. The root is the unique one with `xi = x0 mod p^(m - delta)`
/// and it has `v_p(f'(xi)) = delta`. The residue of `x0` is treated as an
/// exact integer. The lift runs Newton's iteration with doubling working
/// precision. A root that is exactly zero comes back as exact zero.
pub fn hensel_lift(f: &IntPolynomial, x0: &PAdic, target_precision: u32) -> Result<PAdic> {
    let p = x0.prime().clone();
    if target_precision == 0 {
        return Err(Error::OutOfRange("target precision must be at least 1".into()));
    }
    if !x0.is_integral() {
        return Err(Error::OutOfRange(format!("{x0} is not in Z_{p}")));
    }
    let start = match x0.absolute_precision() {
        None => BigInt::zero(),
        Some(n) => x0.residue(n as u32)?,
    };
    let df = f.derivative();
    let fx = f.eval(&start);
    let dfx = df.eval(&start);
    if dfx.is_zero() {
        return Err(Error::HenselHypothesis("f'(x0) = 0".into()));
    }
    let delta = split_int(&dfx, &p).0;
    if fx.is_zero() {
        return if start.is_zero() {
            PAdic::zero(&p)
        } else {
            PAdic::from_integer(&start, &p, target_precision)
        };
    }
    let m = split_int(&fx, &p).0;
    if m <= 2 * delta {
        return Err(Error::HenselHypothesis(format!(
            "v_p(f(x0)) = {m} is not greater than 2 v_p(f'(x0)) = {}",
            2 * delta
        )));
    }
    let ball = m - delta;
    if modulo(&start, &ppow(&p, ball)).is_zero() && f.coeffs().first().is_none_or(Zero::is_zero) {
        // 0 lies in the uniqueness ball and is a root
        return PAdic::zero(&p);
    }

    let mut x = start;
    let mut width = u64::from(target_precision).max(ball);
    loop {
        x = newton(f, &df, x, &p, width, delta)?;
        let r = modulo(&x, &ppow(&p, width));
        let v = residue_valuation(&r, &p, width);
        if v < width && width >= v + u64::from(target_precision) {
            return PAdic::new(&p, v as i64, &(r / ppow(&p, v)), target_precision);
        }
        width = (2 * width).max(v + u64::from(target_precision));
    }
}

/// Newton steps until `f(x) = 0 mod p^(width + delta)`, which pins the root
/// down modulo `p^width`.
fn newton(
    f: &IntPolynomial,
    df: &IntPolynomial,
    mut x: BigInt,
    p: &BigInt,
    width: u64,
    delta: u64,
) -> Result<BigInt> {
    let goal = width + delta;
    let modulus = ppow(p, goal);
    let pd = ppow(p, delta);
    loop {
        x = modulo(&x, &modulus);
        let fx = f.eval_mod(&x, &modulus);
        if fx.is_zero() {
            return Ok(x);
        }
        let dfx = df.eval_mod(&x, &modulus);
        if residue_valuation(&dfx, p, goal) != delta {
            return Err(Error::Invariant(format!("v_p(f') drifted away from {delta}")));
        }
        let q = &fx / &pd;
        let u = mod_inv(&(dfx / &pd), &modulus).expect("unit derivative quotient");
        x -= q * u;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_prime;
    use proptest::prelude::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    /// The one-digit iteration: extend a root mod p^j to mod p^(j+1) by the
    /// unique digit keeping f(x) = 0 mod p^(j+1+delta).
    fn one_digit_lift(f: &IntPolynomial, x0: i64, p: i64, delta: u64, from: u64, to: u64) -> BigInt {
        let p = b(p);
        let mut x = modulo(&b(x0), &ppow(&p, from));
        for j in from..to {
            let step = ppow(&p, j);
            let m = ppow(&p, j + 1 + delta);
            let candidates: Vec<BigInt> = (0..p.to_string().parse::<i64>().unwrap())
                .map(|t| &x + &step * t)
                .filter(|c| f.eval_mod(c, &m).is_zero())
                .collect();
            assert_eq!(candidates.len(), 1, "digit {j} not unique");
            x = candidates.into_iter().next().unwrap();
        }
        x
    }

    #[test]
    fn polynomial_basics() {
        let f = IntPolynomial::from_i64(&[-17, 0, 1, 0, 0]);
        assert_eq!(f.degree(), Some(2));
        assert_eq!(f.derivative(), IntPolynomial::from_i64(&[0, 2]));
        assert_eq!(f.eval(&b(5)), b(8));
        assert_eq!(f.to_string(), "T^2 - 17");
        assert_eq!(IntPolynomial::from_i64(&[3, -2, 0, 4]).to_string(), "4*T^3 - 2*T + 3");
        assert_eq!(IntPolynomial::default().degree(), None);
    }

    #[test]
    fn spec_examples() {
        let f = IntPolynomial::from_i64(&[-17, 0, 1]);
        let x0 = PAdic::from_integer(&b(1), &b(2), 2).unwrap();
        let xi = hensel_lift(&f, &x0, 4).unwrap();
        assert_eq!(xi.residue(4).unwrap(), b(9));

        let g = IntPolynomial::from_i64(&[-2, 0, 1]);
        let x0 = PAdic::from_integer(&b(3), &b(7), 1).unwrap();
        assert_eq!(hensel_lift(&g, &x0, 2).unwrap().residue(2).unwrap(), b(10));

        let lin = IntPolynomial::from_i64(&[-12, 1]);
        let x0 = PAdic::from_integer(&b(12), &b(5), 3).unwrap();
        assert!(hensel_lift(&lin, &x0, 6).unwrap().agrees_with(&crate::arith::int(12)));
    }

    #[test]
    fn hypothesis_violations() {
        let f = IntPolynomial::from_i64(&[-17, 0, 1]);
        let x0 = PAdic::from_integer(&b(1), &b(2), 1).unwrap();
        let x1 = PAdic::from_integer(&b(3), &b(2), 2).unwrap();
        assert!(hensel_lift(&f, &x1, 4).is_ok());
        let g = IntPolynomial::from_i64(&[-3, 0, 1]);
        assert!(matches!(hensel_lift(&g, &x0, 4), Err(Error::HenselHypothesis(_))));
        let c = IntPolynomial::from_i64(&[5]);
        assert!(matches!(hensel_lift(&c, &x0, 4), Err(Error::HenselHypothesis(_))));
    }

    #[test]
    fn exact_zero_root() {
        let f = IntPolynomial::from_i64(&[0, 3, 1]);
        let x0 = PAdic::from_integer(&b(9), &b(3), 3).unwrap();
        assert!(hensel_lift(&f, &x0, 5).unwrap().is_zero());
    }

    #[test]
    fn non_unit_root_keeps_relative_precision() {
        // T^2 - 3T - 18 = (T - 6)(T + 3); root 6 at p = 3 has valuation 1
        let f = IntPolynomial::from_i64(&[-18, -3, 1]);
        let x0 = PAdic::from_integer(&b(33), &b(3), 3).unwrap();
        let r = hensel_lift(&f, &x0, 5).unwrap();
        assert_eq!((r.valuation(), r.precision()), (Some(1), Some(5)));
        assert!(r.agrees_with(&crate::arith::int(6)));
    }

    proptest! {
        #[test]
        fn newton_matches_one_digit_iteration(p in 3i64..60, a in 1i64..10_000, n in 2u32..12) {
            prop_assume!(is_prime(&b(p)) && a % p != 0);
            let f = IntPolynomial::new(vec![-b(a * a), b(0), b(1)]);
            // perturb the root by p so Hensel has work to do
            let start = a + p;
            let x0 = PAdic::from_integer(&b(start), &b(p), 1).unwrap();
            let xi = hensel_lift(&f, &x0, n).unwrap();
            let oracle = one_digit_lift(&f, start, p, 0, 1, n as u64);
            prop_assert_eq!(xi.residue(n).unwrap(), oracle);
            // fixed point
            let again = hensel_lift(&f, &xi, n).unwrap();
            prop_assert_eq!(again, xi);
        }

        #[test]
        fn two_adic_lift_matches_oracle(u in 0i64..1000, n in 3u32..16) {
            let a = 8 * u + 1;
            let f = IntPolynomial::from_i64(&[-a, 0, 1]);
            let x0 = PAdic::from_integer(&b(1), &b(2), 2).unwrap();
            let xi = hensel_lift(&f, &x0, n).unwrap();
            let oracle = one_digit_lift(&f, 1, 2, 1, 2, n as u64);
            prop_assert_eq!(xi.residue(n).unwrap(), oracle);
            let sq = xi.checked_mul(&xi).unwrap();
            prop_assert!(sq.agrees_with(&crate::arith::int(a)));
        }
    }
}
