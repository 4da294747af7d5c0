//! The quadratic Hilbert symbol `(a, b)_v` at every place of `Q`.
//!
//! `(a, b)_v = +1` iff `a x^2 + b y^2 = 1` has a solution in `Q_v`. All
//! symbols are computed exactly from valuations and unit parts; only the
//! solvability witnesses carry finite precision.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_prime, modulo, rational_sqrt, vp_split, Place, Rational};
use crate::error::{Error, Result};
use crate::padic::{padic_sqrt, smallest_nonresidue, square_class_rational, PAdic};
use crate::sign::{Epsilon, Sign};
use crate::symbols::{euler_criterion, QuadraticCharacter};

fn eps4(u: &BigInt) -> Epsilon {
    Epsilon(modulo(u, &BigInt::from(4)) == BigInt::from(3))
}

fn eps8(u: &BigInt) -> Epsilon {
    let r = modulo(u, &BigInt::from(8));
    Epsilon(r == BigInt::from(3) || r == BigInt::from(5))
}

/// `(a, b)_p` from `a = p^va ua`, `b = p^vb ub`. The units are integers
/// prime to `p` whose class mod `p` (odd `p`) or mod 8 (`p = 2`) is right.
fn symbol_at_prime(p: &BigInt, va: i64, ua: &BigInt, vb: i64, ub: &BigInt) -> Sign {
    let (ea, eb) = (Epsilon::from_int(va), Epsilon::from_int(vb));
    let e = if *p == BigInt::from(2) {
        eps4(ua) * eps4(ub) + eb * eps8(ua) + ea * eps8(ub)
    } else {
        let ep = |u: &BigInt| euler_criterion(u, p).epsilon();
        eps4(p) * ea * eb + eb * ep(ua) + ea * ep(ub)
    };
    e.sign()
}

/// Valuation and an integer unit `n d` in the square class of `x p^-v`.
fn local_parts(x: &Rational, p: &BigInt) -> Result<(i64, BigInt)> {
    let (v, u) = vp_split(x, p).ok_or(Error::Zero("argument"))?;
    Ok((v, u.numer() * u.denom()))
}

fn check_place(v: &Place) -> Result<()> {
    match v {
        Place::Finite(p) if !is_prime(p) => Err(Error::not_prime("place", p)),
        _ => Ok(()),
    }
}

pub fn hilbert_symbol(a: &Rational, b: &Rational, v: &Place) -> Result<Sign> {
    if a.is_zero() {
        return Err(Error::Zero("a"));
    }
    if b.is_zero() {
        return Err(Error::Zero("b"));
    }
    check_place(v)?;
    match v {
        Place::Infinite => Ok(Sign::from_bool(a.is_positive() || b.is_positive())),
        Place::Finite(p) => {
            let (va, ua) = local_parts(a, p)?;
            let (vb, ub) = local_parts(b, p)?;
            Ok(symbol_at_prime(p, va, &ua, vb, &ub))
        }
    }
}

/// `(a, b)_p` for elements of `Q_p`. At `p = 2` both units need at least
/// three digits.
pub fn hilbert_symbol_padic(a: &PAdic, b: &PAdic) -> Result<Sign> {
    if a.prime() != b.prime() {
        return Err(Error::PrimeMismatch(a.prime().to_string(), b.prime().to_string()));
    }
    let p = a.prime();
    let parts = |x: &PAdic, name: &'static str| -> Result<(i64, BigInt)> {
        match (x.valuation(), x.unit(), x.precision()) {
            (Some(v), Some(u), Some(k)) => {
                if *p == BigInt::from(2) && k < 3 {
                    return Err(Error::OutOfRange(format!(
                        "{name} needs 3 unit digits at p = 2, has {k}"
                    )));
                }
                Ok((v, u.clone()))
            }
            _ => Err(Error::Zero(name)),
        }
    };
    let (va, ua) = parts(a, "a")?;
    let (vb, ub) = parts(b, "b")?;
    Ok(symbol_at_prime(p, va, &ua, vb, &ub))
}

/// The family `((a, b)_v)_v`, listing every place where a `-1` can occur:
/// `inf`, `2` and the primes of `a` and `b`. Other places are `+1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "WireVector", into = "WireVector")]
pub struct SymbolVector {
    entries: BTreeMap<Place, Sign>,
}

impl SymbolVector {
    /// Builds a vector, rejecting an odd number of `-1` entries.
    pub fn new(entries: BTreeMap<Place, Sign>) -> Result<Self> {
        let v = SymbolVector { entries };
        if v.minus_places().count() % 2 == 1 {
            return Err(Error::Invariant(format!(
                "odd number of -1 entries in {v}"
            )));
        }
        Ok(v)
    }

    pub fn get(&self, v: &Place) -> Sign {
        self.entries.get(v).copied().unwrap_or(Sign::Plus)
    }

    pub fn entries(&self) -> &BTreeMap<Place, Sign> {
        &self.entries
    }

    pub fn minus_places(&self) -> impl Iterator<Item = &Place> {
        self.entries.iter().filter(|(_, s)| s.is_minus()).map(|(p, _)| p)
    }

    pub fn is_all_plus(&self) -> bool {
        self.minus_places().next().is_none()
    }

    pub fn product(&self) -> Sign {
        self.entries.values().copied().product()
    }

    /// The value at `w` implied by all the others through the product
    /// formula.
    pub fn recover(&self, w: &Place) -> Sign {
        self.entries
            .iter()
            .filter(|(p, _)| *p != w)
            .map(|(_, s)| *s)
            .product()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("symbol vectors serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for SymbolVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(p, s)| format!("{p}:{s}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireVector {
    support: Vec<WireEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireEntry {
    place: WirePlace,
    sign: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WirePlace {
    Number(u64),
    Text(String),
}

impl From<SymbolVector> for WireVector {
    fn from(v: SymbolVector) -> Self {
        let support = v
            .entries
            .into_iter()
            .map(|(place, s)| WireEntry {
                place: match &place {
                    Place::Infinite => WirePlace::Text("inf".into()),
                    Place::Finite(p) => match p.to_u64() {
                        Some(n) => WirePlace::Number(n),
                        None => WirePlace::Text(p.to_string()),
                    },
                },
                sign: s.to_i32().into(),
            })
            .collect();
        WireVector { support }
    }
}

impl TryFrom<WireVector> for SymbolVector {
    type Error = Error;
    fn try_from(w: WireVector) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for e in w.support {
            let place: Place = match e.place {
                WirePlace::Number(n) => Place::finite(n)?,
                WirePlace::Text(t) => t.parse()?,
            };
            let sign = Sign::from_i64(e.sign)
                .ok_or_else(|| Error::Parse(format!("sign must be 1 or -1, got {}", e.sign)))?;
            if entries.insert(place.clone(), sign).is_some() {
                return Err(Error::Parse(format!("duplicate place {place}")));
            }
        }
        SymbolVector::new(entries).map_err(|_| Error::Parse("odd number of -1 entries".into()))
    }
}

/// The places at which `(a, b)_v` can differ from `+1`.
pub fn candidate_places(a: &Rational, b: &Rational) -> Result<Vec<Place>> {
    let mut primes = vec![BigInt::from(2)];
    for x in [a, b] {
        for part in [x.numer(), x.denom()] {
            primes.extend(factorize(part)?.primes().cloned());
        }
    }
    primes.sort();
    primes.dedup();
    let mut places = vec![Place::Infinite];
    places.extend(primes.into_iter().map(Place::Finite));
    Ok(places)
}

/// Every `(a, b)_v`, checked against the product formula.
pub fn hilbert_vector(a: &Rational, b: &Rational) -> Result<SymbolVector> {
    if a.is_zero() {
        return Err(Error::Zero("a"));
    }
    if b.is_zero() {
        return Err(Error::Zero("b"));
    }
    let mut entries = BTreeMap::new();
    for v in candidate_places(a, b)? {
        let s = hilbert_symbol(a, b, &v)?;
        entries.insert(v, s);
    }
    SymbolVector::new(entries)
}

/// `a` is a norm from `Q_v(sqrt b)`.
pub fn is_local_norm(a: &Rational, b: &Rational, v: &Place) -> Result<bool> {
    Ok(hilbert_symbol(a, b, v)?.is_plus())
}

/// How well a witness satisfies `a x^2 + b y^2 = 1`.
#[derive(Clone, Debug, PartialEq)]
pub enum Accuracy {
    /// Equality holds in `Q`.
    Exact,
    /// `v_p(a x^2 + b y^2 - 1) >= n`.
    Digits(u32),
    /// `|a x^2 + b y^2 - 1| <= tol` in `R`; `x, y` are approximations.
    Tolerance(f64),
}

/// Rationals `x, y` solving `a x^2 + b y^2 = 1` in `Q_v` to the stated
/// accuracy.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalWitness {
    pub place: Place,
    pub x: Rational,
    pub y: Rational,
    pub accuracy: Accuracy,
}

impl LocalWitness {
    pub fn residual(&self, a: &Rational, b: &Rational) -> Rational {
        a * &self.x * &self.x + b * &self.y * &self.y - Rational::one()
    }

    pub fn is_approximate(&self) -> bool {
        matches!(self.accuracy, Accuracy::Tolerance(_))
    }

    /// Re-checks the witness at its place.
    pub fn verify(&self, a: &Rational, b: &Rational) -> bool {
        let r = self.residual(a, b);
        match (&self.accuracy, &self.place) {
            (Accuracy::Exact, _) => r.is_zero(),
            (Accuracy::Digits(n), Place::Finite(p)) => {
                vp_split(&r, p).is_none_or(|(v, _)| v >= i64::from(*n))
            }
            (Accuracy::Tolerance(t), Place::Infinite) => r.abs().to_f64().is_some_and(|e| e <= *t),
            _ => false,
        }
    }
}

/// Maximum numerator and denominator tried when looking for an exact real
/// witness.
const REAL_SEARCH_BOUND: i64 = 40;

/// A solution of `a x^2 + b y^2 = 1` in `Q_v`, or `None` exactly when
/// `(a, b)_v = -1`. At a finite place `precision` is the number of
/// p-adic digits guaranteed.
pub fn local_solve_witness(
    a: &Rational,
    b: &Rational,
    v: &Place,
    precision: u32,
) -> Result<Option<LocalWitness>> {
    if hilbert_symbol(a, b, v)?.is_minus() {
        return Ok(None);
    }
    let exact = |x: Rational, y: Rational| LocalWitness {
        place: v.clone(),
        x,
        y,
        accuracy: Accuracy::Exact,
    };
    if let Some(t) = rational_sqrt(a) {
        return Ok(Some(exact(t.recip(), Rational::zero())));
    }
    if let Some(t) = rational_sqrt(b) {
        return Ok(Some(exact(Rational::zero(), t.recip())));
    }
    let w = match v {
        Place::Infinite => real_witness(a, b),
        Place::Finite(p) => padic_witness(a, b, p, precision)?,
    };
    if !w.verify(a, b) {
        return Err(Error::Invariant(format!("witness for ({a}, {b}) at {v} fails its check")));
    }
    Ok(Some(w))
}

fn real_witness(a: &Rational, b: &Rational) -> LocalWitness {
    let place = Place::Infinite;
    // y = r/s with small r, s; then x^2 = (1 - b y^2)/a must be a square
    for s in 1..=REAL_SEARCH_BOUND {
        for r in 0..=REAL_SEARCH_BOUND {
            let t = Rational::new(r.into(), s.into());
            for (c1, c2, swap) in [(a, b, false), (b, a, true)] {
                if let Some(u) = rational_sqrt(&((Rational::one() - c2 * &t * &t) / c1)) {
                    let (x, y) = if swap { (t.clone(), u) } else { (u, t.clone()) };
                    return LocalWitness { place, x, y, accuracy: Accuracy::Exact };
                }
            }
        }
    }
    // one coefficient is positive; take x = 1/sqrt(a) in floating point
    let (c, swap) = if a.is_positive() { (a, false) } else { (b, true) };
    let approx = c.to_f64().map(|f| 1.0 / f.sqrt()).unwrap_or(0.0);
    let t = BigRational::from_float(approx).unwrap_or_else(Rational::zero);
    let (x, y) = if swap { (Rational::zero(), t) } else { (t, Rational::zero()) };
    let err = (a * &x * &x + b * &y * &y - Rational::one()).abs();
    let tol = err.to_f64().unwrap_or(f64::INFINITY).max(f64::EPSILON);
    LocalWitness { place, x, y, accuracy: Accuracy::Tolerance(tol) }
}

fn padic_witness(a: &Rational, b: &Rational, p: &BigInt, precision: u32) -> Result<LocalWitness> {
    let mut margin = 8;
    for _ in 0..4 {
        let (x, y) = padic_point(a, b, p, precision + margin)?;
        let w = LocalWitness {
            place: Place::Finite(p.clone()),
            accuracy: if (a * &x * &x + b * &y * &y).is_one() {
                Accuracy::Exact
            } else {
                Accuracy::Digits(precision)
            },
            x,
            y,
        };
        if w.verify(a, b) {
            return Ok(w);
        }
        margin *= 2;
    }
    Err(Error::Invariant(format!("no {precision}-digit witness for ({a}, {b}) at {p}")))
}

/// `p^floor(v/2)` so that `x / q^2` has valuation 0 or 1.
fn square_reduce(x: &Rational, p: &BigInt) -> Result<(Rational, Rational)> {
    let (v, _) = vp_split(x, p).ok_or(Error::Zero("argument"))?;
    let q = crate::arith::pow_rational(&Rational::from_integer(p.clone()), Integer::div_floor(&v, &2));
    Ok((x / (&q * &q), q))
}

/// Square root of a unit of `Z_p` given as a rational, as a rational
/// approximation with `n` digits.
fn unit_sqrt(x: &Rational, p: &BigInt, n: u32) -> Result<Rational> {
    padic_sqrt(&PAdic::from_rational(x, p, n)?)?
        .map(|r| r.to_rational())
        .ok_or_else(|| Error::Invariant(format!("{x} expected to be a square in Q_{p}")))
}

fn padic_point(a: &Rational, b: &Rational, p: &BigInt, n: u32) -> Result<(Rational, Rational)> {
    // a x^2 = a' (q x)^2 with v(a') in {0, 1}
    let (a1, qa) = square_reduce(a, p)?;
    let (b1, qb) = square_reduce(b, p)?;
    let (x, y) = reduced_point(&a1, &b1, p, n)?;
    Ok((x / qa, y / qb))
}

fn reduced_point(a: &Rational, b: &Rational, p: &BigInt, n: u32) -> Result<(Rational, Rational)> {
    let va = vp_split(a, p).expect("nonzero").0;
    let vb = vp_split(b, p).expect("nonzero").0;
    match (va, vb) {
        (0, 0) => unit_point(a, b, p, n),
        (0, 1) => unit_nonunit_point(a, b, p, n, false),
        (1, 0) => unit_nonunit_point(b, a, p, n, false).map(|(y, x)| (x, y)),
        _ => {
            // (-a/b, b) has the same symbol; from -(a/b) X^2 + b Y^2 = 1
            // we get a X^2 + b 1^2 = (b Y)^2
            let c = -(a / b);
            let (big_x, big_y) = unit_nonunit_point(&c, b, p, n, true)?;
            let w = b * big_y;
            Ok((big_x / &w, w.recip()))
        }
    }
}

fn unit_point(a: &Rational, b: &Rational, p: &BigInt, n: u32) -> Result<(Rational, Rational)> {
    let one = Rational::one();
    if *p == BigInt::from(2) {
        let is_1_mod_4 = |x: &Rational| modulo(&(x.numer() * x.denom()), &BigInt::from(4)).is_one();
        if !is_1_mod_4(a) {
            return unit_point(b, a, p, n).map(|(y, x)| (x, y));
        }
        let a8 = modulo(&(a.numer() * a.denom()), &BigInt::from(8));
        if a8.is_one() {
            return Ok((unit_sqrt(&a.recip(), p, n)?, Rational::zero()));
        }
        // a = 5 mod 8, so (1 - 4b)/a = 1 mod 8
        let two = Rational::from_integer(BigInt::from(2));
        let t = unit_sqrt(&((&one - b * Rational::from_integer(BigInt::from(4))) / a), p, n)?;
        return Ok((t, two));
    }
    // a x^2 + b y^2 = 1 mod p has a solution; find one with a liftable
    // coordinate by scanning the other over F_p
    let mut t = BigInt::zero();
    while t < *p {
        let tr = Rational::from_integer(t.clone());
        for (c1, c2, swap) in [(a, b, false), (b, a, true)] {
            let target = (&one - c2 * &tr * &tr) / c1;
            let is_nonzero_square = vp_split(&target, p).is_some_and(|(v, u)| {
                v == 0 && euler_criterion(&(u.numer() * u.denom()), p).is_plus()
            });
            if is_nonzero_square {
                let s = unit_sqrt(&target, p, n)?;
                return Ok(if swap { (tr, s) } else { (s, tr) });
            }
        }
        t += 1;
    }
    Err(Error::Invariant(format!("no point of {a} x^2 + {b} y^2 = 1 mod {p}")))
}

/// `a` a unit, `v(b) = 1`. With `nonzero_y` the returned `y` is a unit or
/// `2`, which the `(-a/b, b)` reduction needs.
fn unit_nonunit_point(
    a: &Rational,
    b: &Rational,
    p: &BigInt,
    n: u32,
    nonzero_y: bool,
) -> Result<(Rational, Rational)> {
    let one = Rational::one();
    let ua = a.numer() * a.denom();
    if *p == BigInt::from(2) {
        let a8 = modulo(&ua, &BigInt::from(8));
        if a8.is_one() {
            if !nonzero_y {
                return Ok((unit_sqrt(&a.recip(), p, n)?, Rational::zero()));
            }
            // b = 0 mod 2 makes 4b = 0 mod 8
            let y = Rational::from_integer(BigInt::from(2));
            let t = unit_sqrt(&((&one - b * &y * &y) / a), p, n)?;
            return Ok((t, y));
        }
        // a = 1 - b mod 8
        let t = unit_sqrt(&((&one - b) / a), p, n)?;
        return Ok((t, one));
    }
    // lambda_p(a) = +1; 1 - b = 1 mod p keeps (1 - b)/a a square
    if nonzero_y {
        let t = unit_sqrt(&((&one - b) / a), p, n)?;
        return Ok((t, one));
    }
    Ok((unit_sqrt(&a.recip(), p, n)?, Rational::zero()))
}

/// Square-class representatives of `Q_p^x`.
pub fn square_class_representatives(p: &BigInt) -> Result<Vec<BigInt>> {
    if !is_prime(p) {
        return Err(Error::not_prime("p", p));
    }
    if *p == BigInt::from(2) {
        return Ok([1, 5, -1, -5, 2, 10, -2, -10].map(BigInt::from).to_vec());
    }
    let u = smallest_nonresidue(p)?;
    Ok(vec![BigInt::one(), u.clone(), p.clone(), u * p])
}

/// The quadratic extensions `Q_p(sqrt b)` with their characters
/// `chi_b(a) = (a, b)_p`, whose kernel is the norm group.
///
/// Odd `p`: `sqrt u <-> nu_p`, `sqrt(-p) <-> lambda_p`,
/// `sqrt(-up) <-> nu_p lambda_p`. At `p = 2` the seven classes of
/// `{5, -1, 2}` and their products pair with `nu_2`, `lambda_4`,
/// `lambda_8` and their products. Each pair is checked on every square
/// class before it is returned.
pub fn ext_char_correspondence(p: &BigInt) -> Result<Vec<(BigInt, QuadraticCharacter)>> {
    if !is_prime(p) {
        return Err(Error::not_prime("p", p));
    }
    let nu = QuadraticCharacter::unramified(p)?;
    let table = if *p == BigInt::from(2) {
        let l4 = QuadraticCharacter::lambda4();
        let l8 = QuadraticCharacter::lambda8();
        vec![
            (BigInt::from(5), nu.clone()),
            (BigInt::from(-1), l4.clone()),
            (BigInt::from(-5), nu.times(&l4)?),
            (BigInt::from(2), l8.clone()),
            (BigInt::from(10), nu.times(&l8)?),
            (BigInt::from(-2), l4.times(&l8)?),
            (BigInt::from(-10), nu.times(&l4)?.times(&l8)?),
        ]
    } else {
        let u = smallest_nonresidue(p)?;
        let lp = QuadraticCharacter::lambda(p)?;
        vec![
            (u.clone(), nu.clone()),
            (-p, lp.clone()),
            (-(u * p), nu.times(&lp)?),
        ]
    };
    let reps = square_class_representatives(p)?;
    let place = Place::Finite(p.clone());
    for (b, chi) in &table {
        let b = Rational::from_integer(b.clone());
        for r in &reps {
            let a = Rational::from_integer(r.clone());
            if chi.eval_local(&a, p)? != hilbert_symbol(&a, &b, &place)? {
                return Err(Error::Invariant(format!("{chi} is not the character of Q_{p}(sqrt {b})")));
            }
        }
    }
    Ok(table)
}

/// The character attached to `Q_p(sqrt b)`; trivial when `b` is a square.
pub fn character_of_extension(b: &Rational, p: &BigInt) -> Result<QuadraticCharacter> {
    let class = square_class_rational(b, p)?;
    if class.is_square() {
        return Ok(QuadraticCharacter::trivial());
    }
    let rep = class.representative();
    let table = ext_char_correspondence(p)?;
    // the table names -p, -up; match them up to squares
    for (c, chi) in table {
        if square_class_rational(&Rational::from_integer(c), p)?.representative() == rep {
            return Ok(chi);
        }
    }
    Err(Error::Invariant(format!("no table entry for the class of {b} at {p}")))
}

/// The pairing matrix `((e_i, e_j)_p)` on the basis of `Q_p^x / squares`:
/// `{u, p}` for odd `p` and `{5, -1, 2}` at 2.
pub fn pairing_matrix(p: &BigInt) -> Result<(Vec<BigInt>, Vec<Vec<Sign>>)> {
    if !is_prime(p) {
        return Err(Error::not_prime("p", p));
    }
    let basis = if *p == BigInt::from(2) {
        [5, -1, 2].map(BigInt::from).to_vec()
    } else {
        vec![smallest_nonresidue(p)?, p.clone()]
    };
    let place = Place::Finite(p.clone());
    let mut m = Vec::new();
    for x in &basis {
        let mut row = Vec::new();
        for y in &basis {
            row.push(hilbert_symbol(
                &Rational::from_integer(x.clone()),
                &Rational::from_integer(y.clone()),
                &place,
            )?);
        }
        m.push(row);
    }
    Ok((basis, m))
}
