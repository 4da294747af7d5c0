//! Global solvability of `a x^2 + b y^2 = 1` over `Q` by Legendre descent.
//!
//! A frame `d^2 - a = b c` turns solutions of `a x^2 + b y^2 = s^2` into
//! solutions of `a w^2 + c z^2 = t^2` and back. Choosing `d` small makes
//! `|c| < |b|`, so repeated descent reaches a trivial conic.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{
    factorize, parse_rational, sqrt_mod_squarefree_allowing_shared, squarefree_decompose, Place, Rational,
};
use crate::error::{Error, Result};
use crate::hilbert::{hilbert_symbol, hilbert_vector, SymbolVector};
use crate::symbols::euler_criterion;

/// Which way a descent step goes: `S` is `a x^2 + b y^2 = s^2`, `T` is
/// `a w^2 + c z^2 = t^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `S -> T`: `(d x + s, b y, a x + d s)`.
    Forward,
    /// `T -> S`: `(d w - t, c z, -a w + d t)`.
    Backward,
}

/// The descent maps over any commutative ring. Composing them in either
/// order multiplies the triple by `b c`.
pub fn descent_map<T>(a: &T, b: &T, c: &T, d: &T, sol: &(T, T, T), dir: Direction) -> (T, T, T)
where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let (x, y, s) = sol.clone();
    match dir {
        Direction::Forward => (
            d.clone() * x.clone() + s.clone(),
            b.clone() * y,
            a.clone() * x + d.clone() * s,
        ),
        Direction::Backward => (
            d.clone() * x.clone() - s.clone(),
            c.clone() * y,
            d.clone() * s - a.clone() * x,
        ),
    }
}

/// Integers `a, b, c, d` with `d^2 - a = b c`, `a b c != 0` and
/// `0 <= d <= |b|/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentFrame {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl DescentFrame {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        if a.is_zero() || b.is_zero() || c.is_zero() {
            return Err(Error::Zero("frame coefficient"));
        }
        if &d * &d - &a != &b * &c {
            return Err(Error::OutOfRange(format!("d^2 - a != b c for ({a}, {b}, {c}, {d})")));
        }
        if d.is_negative() || BigInt::from(2) * &d > b.abs() {
            return Err(Error::OutOfRange(format!("d = {d} outside [0, |b|/2]")));
        }
        Ok(DescentFrame { a, b, c, d })
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }
}

/// One descent step on a rational triple, checking that the input solves
/// the source equation.
pub fn descent_step(
    frame: &DescentFrame,
    sol: &(Rational, Rational, Rational),
    dir: Direction,
) -> Result<(Rational, Rational, Rational)> {
    let (x, y, s) = sol;
    if x.is_zero() && y.is_zero() && s.is_zero() {
        return Err(Error::Zero("triple"));
    }
    let q = |n: &BigInt| Rational::from_integer(n.clone());
    let (a, b, c, d) = (q(&frame.a), q(&frame.b), q(&frame.c), q(&frame.d));
    let second = if dir == Direction::Forward { &b } else { &c };
    if &a * x * x + second * y * y != s * s {
        return Err(Error::OutOfRange(format!("({x}, {y}, {s}) is not a solution")));
    }
    Ok(descent_map(&a, &b, &c, &d, sol, dir))
}

/// The outcome of [`solve_conic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConicOutcome {
    Solution { x: Rational, y: Rational },
    /// The places where `(a, b)_v = -1`; always an even, nonempty list.
    Obstruction { places: Vec<Place> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicCertificate {
    pub a: Rational,
    pub b: Rational,
    pub outcome: ConicOutcome,
    /// Number of descent steps taken.
    pub depth: usize,
}

impl ConicCertificate {
    pub fn is_solvable(&self) -> bool {
        matches!(self.outcome, ConicOutcome::Solution { .. })
    }

    /// Re-checks the certificate from scratch.
    pub fn verify(&self) -> Result<bool> {
        Ok(match &self.outcome {
            ConicOutcome::Solution { x, y } => &self.a * x * x + &self.b * y * y == Rational::one(),
            ConicOutcome::Obstruction { places } => {
                let mut ok = !places.is_empty() && places.len() % 2 == 0;
                for v in places {
                    ok &= hilbert_symbol(&self.a, &self.b, v)?.is_minus();
                }
                ok
            }
        })
    }

    pub fn to_report(&self) -> ConicReport {
        let (outcome, x, y, places) = match &self.outcome {
            ConicOutcome::Solution { x, y } => ("solution", Some(x.to_string()), Some(y.to_string()), vec![]),
            ConicOutcome::Obstruction { places } => {
                ("obstruction", None, None, places.iter().map(Place::to_string).collect())
            }
        };
        ConicReport {
            a: self.a.to_string(),
            b: self.b.to_string(),
            outcome: outcome.to_string(),
            x,
            y,
            places,
        }
    }
}

impl fmt::Display for ConicCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            ConicOutcome::Solution { x, y } => write!(f, "solution x = {x}, y = {y}"),
            ConicOutcome::Obstruction { places } => {
                let ps: Vec<String> = places.iter().map(Place::to_string).collect();
                write!(f, "obstruction at {{{}}}", ps.join(", "))
            }
        }
    }
}

/// Wire form of a conic certificate. Rationals are `"n"` or `"n/d"`
/// strings, places `"inf"` or a decimal prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConicReport {
    pub a: String,
    pub b: String,
    pub outcome: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
    #[serde(default)]
    pub places: Vec<String>,
}

impl ConicReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    /// Parses and validates a report: solutions must satisfy the equation
    /// exactly, obstructions must list an even number of distinct places.
    pub fn from_json(s: &str) -> Result<Self> {
        let r: ConicReport = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        r.to_certificate()?;
        Ok(r)
    }

    /// The certificate this report describes, with the local symbols left
    /// unchecked.
    pub fn to_certificate(&self) -> Result<ConicCertificate> {
        let a = parse_rational(&self.a)?;
        let b = parse_rational(&self.b)?;
        if a.is_zero() || b.is_zero() {
            return Err(Error::Parse("coefficients must be nonzero".into()));
        }
        let outcome = match (self.outcome.as_str(), &self.x, &self.y) {
            ("solution", Some(x), Some(y)) if self.places.is_empty() => {
                let (x, y) = (parse_rational(x)?, parse_rational(y)?);
                if &a * &x * &x + &b * &y * &y != Rational::one() {
                    return Err(Error::Parse("solution does not satisfy a x^2 + b y^2 = 1".into()));
                }
                ConicOutcome::Solution { x, y }
            }
            ("obstruction", None, None) => {
                let mut places = Vec::new();
                for p in &self.places {
                    let v: Place = p.parse()?;
                    if places.contains(&v) {
                        return Err(Error::Parse(format!("duplicate place {v}")));
                    }
                    places.push(v);
                }
                if places.is_empty() || places.len() % 2 == 1 {
                    return Err(Error::Parse("obstruction needs an even, nonzero number of places".into()));
                }
                ConicOutcome::Obstruction { places }
            }
            _ => return Err(Error::Parse(format!("inconsistent report for outcome {:?}", self.outcome))),
        };
        Ok(ConicCertificate { a, b, outcome, depth: 0 })
    }
}

/// Decides `a x^2 + b y^2 = 1` over `Q`. A solution is verified exactly and
/// normalised to `x >= 0`, `y <= 0`; otherwise the obstructing places are
/// returned.
pub fn solve_conic(a: &Rational, b: &Rational) -> Result<ConicCertificate> {
    let symbols = hilbert_vector(a, b)?;
    if !symbols.is_all_plus() {
        return Ok(obstruction(a, b, &symbols));
    }
    // a = sa ma^2, so a x^2 = sa (ma x)^2
    let (sa, ma) = squarefree_decompose(a)?;
    let (sb, mb) = squarefree_decompose(b)?;
    let mut depth = 0;
    let (x0, y0) = descend(&sa, &sb, &mut depth)?;
    let (x, y) = ((x0 / ma).abs(), -(y0 / mb).abs());
    if a * &x * &x + b * &y * &y != Rational::one() {
        return Err(Error::Invariant(format!("descent returned a non-solution for ({a}, {b})")));
    }
    log::debug!("solve_conic({a}, {b}): depth {depth}");
    Ok(ConicCertificate {
        a: a.clone(),
        b: b.clone(),
        outcome: ConicOutcome::Solution { x, y },
        depth,
    })
}

fn obstruction(a: &Rational, b: &Rational, symbols: &SymbolVector) -> ConicCertificate {
    ConicCertificate {
        a: a.clone(),
        b: b.clone(),
        outcome: ConicOutcome::Obstruction { places: symbols.minus_places().cloned().collect() },
        depth: 0,
    }
}

/// Solves `a x^2 + b y^2 = 1` for squarefree integers with all local
/// symbols `+1`.
fn descend(a: &BigInt, b: &BigInt, depth: &mut usize) -> Result<(Rational, Rational)> {
    let q = |n: &BigInt| Rational::from_integer(n.clone());
    if a.is_one() {
        return Ok((Rational::one(), Rational::zero()));
    }
    if b.is_one() {
        return Ok((Rational::zero(), Rational::one()));
    }
    if a.abs() > b.abs() {
        return descend(b, a, depth).map(|(y, x)| (x, y));
    }
    *depth += 1;
    let d = sqrt_mod_squarefree_allowing_shared(a, b)?
        .ok_or_else(|| Error::Invariant(format!("{a} is not a square mod {b} despite local solvability")))?;
    let c = (&d * &d - a) / b;
    if c.is_zero() {
        return Ok((q(&d).recip(), Rational::zero()));
    }
    let (e, f) = squarefree_decompose(&q(&c))?;
    log::trace!("descent ({a}, {b}) with d = {d}: c = {c} = {e} * ({f})^2");
    if e.abs() >= b.abs() {
        return Err(Error::Invariant(format!("descent did not shrink |b| = {b} (got {e})")));
    }
    let (w, z) = descend(a, &e, depth)?;
    // a w^2 + c (z/f)^2 = 1, mapped back to a x^2 + b y^2 = s^2
    let t_sol = (w, z / f, Rational::one());
    let (x, y, s) = descent_map(&q(a), &q(b), &q(&c), &q(&d), &t_sol, Direction::Backward);
    let (qa, qb) = (q(a), q(b));
    let sol = if !s.is_zero() {
        (x / &s, y / &s)
    } else {
        // a x^2 + b y^2 = 0 makes b = -a/t^2 with t = y/x, and then
        // ((a+1)/2a, t (a-1)/2a) solves the conic
        let t = y / x;
        let two_a = &qa * Rational::from_integer(BigInt::from(2));
        ((&qa + Rational::one()) / &two_a, t * (&qa - Rational::one()) / &two_a)
    };
    if &qa * &sol.0 * &sol.0 + &qb * &sol.1 * &sol.1 != Rational::one() {
        return Err(Error::Invariant(format!("descent step failed at ({a}, {b})")));
    }
    Ok(sol)
}

/// The outcome of [`legendre_ternary`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TernaryOutcome {
    /// A primitive solution with nonnegative entries.
    Solution(BigInt, BigInt, BigInt),
    /// All coefficients have the same sign, so only the zero solution
    /// exists over `R`.
    SameSign,
    /// `-bc` is not a square mod `a` (or the cyclic analogue): the named
    /// coefficient's prime `l` fails.
    NotResidue { coefficient: BigInt, prime: BigInt },
}

/// Nontrivial integer solutions of `a x^2 + b y^2 + c z^2 = 0` for
/// squarefree `abc`: they exist iff the signs are mixed and `-bc`, `-ca`,
/// `-ab` are squares mod `a`, `b`, `c`.
pub fn legendre_ternary(a: &BigInt, b: &BigInt, c: &BigInt) -> Result<TernaryOutcome> {
    let abc = a * b * c;
    if abc.is_zero() {
        return Err(Error::Zero("abc"));
    }
    if !factorize(&abc)?.is_squarefree() {
        return Err(Error::not_squarefree("abc", &abc));
    }
    if a.signum() == b.signum() && b.signum() == c.signum() {
        return Ok(TernaryOutcome::SameSign);
    }
    let residue_failure = residue_conditions(a, b, c)?;
    let q = |n: &BigInt| Rational::from_integer(n.clone());
    let cert = solve_conic(&(-q(a) / q(c)), &(-q(b) / q(c)))?;
    match (cert.outcome, residue_failure) {
        (ConicOutcome::Solution { x, y }, None) => {
            let l = x.denom().lcm(y.denom());
            let mut t = [x.numer() * (&l / x.denom()), y.numer() * (&l / y.denom()), l];
            let g = t[0].gcd(&t[1]).gcd(&t[2]);
            for v in &mut t {
                *v = (&*v / &g).abs();
            }
            let [x, y, z] = t;
            if a * &x * &x + b * &y * &y + c * &z * &z != BigInt::zero() {
                return Err(Error::Invariant("ternary solution fails".into()));
            }
            Ok(TernaryOutcome::Solution(x, y, z))
        }
        (ConicOutcome::Obstruction { .. }, Some((coefficient, prime))) => {
            Ok(TernaryOutcome::NotResidue { coefficient, prime })
        }
        (o, r) => Err(Error::Invariant(format!(
            "residue conditions ({r:?}) disagree with the conic solver ({o:?})"
        ))),
    }
}

/// The first `(coefficient, prime)` where a residue condition fails.
fn residue_conditions(a: &BigInt, b: &BigInt, c: &BigInt) -> Result<Option<(BigInt, BigInt)>> {
    for (m, r) in [(a, -(b * c)), (b, -(c * a)), (c, -(a * b))] {
        for l in factorize(m)?.primes() {
            // every residue is a square mod 2
            if *l != BigInt::from(2) && euler_criterion(&r, l).is_minus() {
                return Ok(Some((m.clone(), l.clone())));
            }
        }
    }
    Ok(None)
}

/// Whether `a` is a norm from `Q(sqrt b)`, with `(y, z)` such that
/// `a = z^2 - b y^2` when it is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormCertificate {
    pub is_norm: bool,
    /// `(y, z)` with `a = z^2 - b y^2`.
    pub witness: Option<(Rational, Rational)>,
    /// Places where `a` is not a local norm.
    pub failing_places: Vec<Place>,
}

pub fn global_is_norm(a: &Rational, b: &Rational) -> Result<NormCertificate> {
    if a.is_zero() {
        return Err(Error::Zero("a"));
    }
    if b.is_zero() {
        return Err(Error::Zero("b"));
    }
    let symbols = hilbert_vector(a, b)?;
    let failing_places: Vec<Place> = symbols.minus_places().cloned().collect();
    if !failing_places.is_empty() {
        return Ok(NormCertificate { is_norm: false, witness: None, failing_places });
    }
    let two = Rational::from_integer(BigInt::from(2));
    let (y, z) = if let Some(s) = crate::arith::rational_sqrt(b) {
        // (z - s y)(z + s y) = a with z - s y = 1
        ((a - Rational::one()) / (&two * s), (a + Rational::one()) / &two)
    } else {
        // z^2 - b y^2 = a  <=>  (1/a) z^2 + (-b/a) y^2 = 1
        let cert = solve_conic(&a.recip(), &(-b / a))?;
        match cert.outcome {
            ConicOutcome::Solution { x, y } => (y, x),
            ConicOutcome::Obstruction { .. } => {
                return Err(Error::Invariant(format!("({a}, {b}) locally a norm but conic obstructed")))
            }
        }
    };
    if &z * &z - b * &y * &y != *a {
        return Err(Error::Invariant("norm witness fails".into()));
    }
    Ok(NormCertificate { is_norm: true, witness: Some((y, z)), failing_places })
}
