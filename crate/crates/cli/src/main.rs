//! `qrlab`: exact quadratic-residue, p-adic and Hilbert-symbol arithmetic
//! from the command line.
//!
//! Exit codes: 0 on success, 2 for bad input or a domain error, 1 when an
//! internal invariant fails or a scan finds a counterexample.

mod scan;

use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{CommandFactory, FromArgMatches, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use qrlab::analytic::{
    bernoulli, conductor_exponent, format_complex, local_root_number_with, p_frac_part, p_frac_part_padic,
    power_sum, root_number_factors, root_number_product, von_staudt_w, LocalCharacter,
};
use qrlab::arith::{
    abs_place, factorize, norm_product_check, parse_rational, sqrt_mod_prime, sqrt_mod_squarefree, vp_split,
    Place, Rational,
};
use qrlab::bost::bost_demo;
use qrlab::hasse::{
    descent_step, global_is_norm, legendre_ternary, solve_conic, DescentFrame, Direction, TernaryOutcome,
};
use qrlab::hilbert::{
    ext_char_correspondence, hilbert_symbol, hilbert_vector, is_local_norm, local_solve_witness, Accuracy,
};
use qrlab::padic::{
    arith, digits, hensel_lift, padic_sqrt, sqrt_series_1p8x, square_class, teichmuller, unit_decompose,
    vp_factorial, ArithOp, DigitScheme, IntPolynomial, PAdic,
};
use qrlab::symbols::{
    binomial_primality, gauss_lemma_sign, group_product_sign, kronecker_chi, lambda4_unit, lambda8_unit,
    lattice_counts, legendre_rational, psi, quadratic_char_basis, reciprocity_check,
};
use qrlab::{Error, Sign};

#[derive(Parser)]
#[command(name = "qrlab", version, about = "Quadratic reciprocity, p-adic numbers, Hilbert symbols and conics over Q")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// p-adic precision in digits.
    #[arg(long, global = true, default_value_t = 32)]
    prec: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor a nonzero integer.
    Factor { n: Int },
    /// Split x = p^v u with u a p-unit.
    Vp { x: Rat, p: Int },
    /// |x|_v at a place ("inf" or a prime).
    Abs { x: Rat, place: PlaceArg },
    /// Check the product formula prod_v |x|_v = 1.
    NormCheck { x: Rat },
    /// Least square root of a modulo an odd prime.
    SqrtMod { a: Int, p: Int },
    /// Least d in [0, |m|/2] with d^2 = a (mod m), m squarefree.
    SqrtModSquarefree { a: Int, m: Int },
    /// Legendre symbol lambda_p(a) for a p-unit a.
    Legendre { a: Rat, p: Int },
    /// lambda_4 of a 2-adic unit.
    Lambda4 { a: Rat },
    /// lambda_8 of a 2-adic unit.
    Lambda8 { a: Rat },
    /// lambda_p(a) by Gauss's lemma.
    GaussLemma { a: Int, p: Int },
    /// The lattice counts (M, N) for two odd primes.
    Lattice { p: Int, q: Int },
    /// Check reciprocity and the supplementary laws for p, q.
    Reciprocity { p: Int, q: Int },
    /// psi_a(n) for odd a.
    Psi { a: Int, n: Int },
    /// The Kronecker character chi_a(x) for squarefree a.
    Kronecker { a: Int, x: Int },
    /// A basis of the quadratic characters of (Z/mZ)^x.
    CharBasis { m: Int },
    /// The sign of the product of all units mod m.
    GroupSign { m: Int },
    /// Primality via (T+1)^n = T^n + 1 mod n.
    BinomialPrime { n: u64 },
    /// p-adic arithmetic: add, sub, mul or div.
    Padic {
        op: String,
        x: String,
        y: String,
        #[arg(long)]
        p: Int,
    },
    /// Lift a root of c0 + c1 T + ... from x0 (coefficients ascending).
    Hensel {
        p: Int,
        x0: String,
        #[arg(required = true)]
        coeffs: Vec<Int>,
    },
    /// p-adic square root.
    PadicSqrt {
        x: String,
        #[arg(long)]
        p: Int,
    },
    /// Teichmuller representative of a mod p.
    Teichmuller { a: Int, p: Int },
    /// Split a unit as omega(x) * u1 with u1 = 1 mod p.
    UnitDecompose {
        x: String,
        #[arg(long)]
        p: Int,
    },
    /// v_p(n!) and n!/(-p)^v mod p.
    VpFactorial { n: u64, p: Int },
    /// The 2-adic series root y of (1+y)^2 = 1+8x.
    SqrtSeries { x: Int },
    /// p-adic digits.
    Digits {
        x: String,
        #[arg(long)]
        p: Int,
        #[arg(long, default_value = "standard")]
        scheme: String,
    },
    /// Square class of x in Q_p.
    SquareClass {
        x: String,
        #[arg(long)]
        p: Int,
    },
    /// Hilbert symbol (a, b)_v, or the whole symbol vector.
    Hilbert {
        a: Rat,
        b: Rat,
        place: Option<PlaceArg>,
        /// List every place with (a, b)_v = -1.
        #[arg(long)]
        all: bool,
    },
    /// A local solution of a x^2 + b y^2 = 1.
    Witness { a: Rat, b: Rat, place: PlaceArg },
    /// Whether a is a norm from Q_v(sqrt b).
    LocalNorm { a: Rat, b: Rat, place: PlaceArg },
    /// Quadratic extensions of Q_p and their characters.
    ExtChars { p: Int },
    /// One descent step for d^2 - a = b c.
    Descent {
        a: Int,
        b: Int,
        c: Int,
        d: Int,
        x: Rat,
        y: Rat,
        s: Rat,
        #[arg(long)]
        backward: bool,
    },
    /// Solve a x^2 + b y^2 = 1 over Q or name the obstruction.
    Solve { a: Rat, b: Rat },
    /// Nontrivial solution of a x^2 + b y^2 + c z^2 = 0.
    Ternary { a: Int, b: Int, c: Int },
    /// Whether a is a norm from Q(sqrt b).
    GlobalNorm { a: Rat, b: Rat },
    /// Bernoulli number B_k.
    Bernoulli { k: usize },
    /// W_k = B_k + sum 1/l over (l-1) | k.
    Vonstaudt { k: u64 },
    /// S_k(n) = 1^k + ... + (n-1)^k.
    PowerSum { k: u32, n: u64 },
    /// The p-adic fractional part <x>_p.
    Frac { x: String, p: Int },
    /// Conductor exponent of the character of Q_p(sqrt d).
    Conductor { d: Rat, p: Int },
    /// Local root number of the character of Q_v(sqrt d).
    RootNumber {
        d: Rat,
        place: PlaceArg,
        /// Unit multiplier g in gamma = p^a g.
        #[arg(long, default_value = "1")]
        gamma: Int,
    },
    /// prod_v W_v for the characters of Q(sqrt d).
    RootProduct { d: Int },
    /// Exhaustive and randomized checks.
    #[command(subcommand)]
    Scan(ScanCommand),
    /// lambda_p(2012) for p = 2^43112609 - 1.
    Bost,
}

#[derive(Subcommand)]
enum ScanCommand {
    /// Reciprocity for all pairs of odd primes below a bound.
    Reciprocity { max_prime: u64 },
    /// Product formula on random pairs of rationals.
    ProductFormula {
        count: u64,
        bound: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Integrality of W_k for even k up to a bound.
    Vonstaudt { max_k: u64 },
}

#[derive(Clone, Debug)]
struct Int(BigInt);

impl FromStr for Int {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        BigInt::from_str(s).map(Int).map_err(|_| format!("not an integer: {s:?}"))
    }
}

#[derive(Clone, Debug)]
struct Rat(Rational);

impl FromStr for Rat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        parse_rational(s).map(Rat).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Debug)]
struct PlaceArg(Place);

impl FromStr for PlaceArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Place::from_str(s).map(PlaceArg).map_err(|e| e.to_string())
    }
}

pub struct Report {
    text: String,
    json: Value,
}

fn report(text: impl Into<String>, json: Value) -> Report {
    Report { text: text.into(), json }
}

fn sign_json(s: Sign) -> Value {
    json!(s.to_i32())
}

fn sign_report(s: Sign) -> Report {
    report(s.to_string(), json!({ "sign": s.to_i32() }))
}

fn bool_report(b: bool) -> Report {
    report(b.to_string(), json!({ "value": b }))
}

/// A p-adic argument: the printed form, or a rational at `--prec` digits.
fn padic_arg(s: &str, p: &BigInt, prec: u32) -> Result<PAdic, Error> {
    if s.contains("O(") {
        PAdic::parse(s, p)
    } else {
        PAdic::from_rational(&parse_rational(s)?, p, prec)
    }
}

fn padic_json(x: &PAdic) -> Value {
    json!({
        "text": x.to_string(),
        "prime": x.prime().to_string(),
        "valuation": x.valuation(),
        "unit": x.unit().map(|u| u.to_string()),
        "precision": x.precision(),
    })
}

fn padic_report(x: &PAdic) -> Report {
    report(x.to_string(), padic_json(x))
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

enum Outcome {
    Done(Report),
    Scan(scan::ScanResult),
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let prec = cli.prec;
    let r = match &cli.command {
        Command::Factor { n } => {
            let f = factorize(&n.0)?;
            let fs: Vec<Value> =
                f.factors().iter().map(|(p, e)| json!({"p": p.to_string(), "e": e})).collect();
            report(f.to_string(), json!({"n": n.0.to_string(), "sign": f.sign().to_i32(), "factors": fs}))
        }
        Command::Vp { x, p } => {
            Place::finite(p.0.clone())?;
            let (v, u) = vp_split(&x.0, &p.0).ok_or(Error::Zero("x"))?;
            report(format!("v = {v}, u = {u}"), json!({"valuation": v, "unit": u.to_string()}))
        }
        Command::Abs { x, place } => {
            let a = abs_place(&x.0, &place.0);
            report(a.to_string(), json!({"value": a.to_string()}))
        }
        Command::NormCheck { x } => bool_report(norm_product_check(&x.0)?),
        Command::SqrtMod { a, p } => {
            let r = sqrt_mod_prime(&a.0, &p.0)?;
            root_report(r)
        }
        Command::SqrtModSquarefree { a, m } => root_report(sqrt_mod_squarefree(&a.0, &m.0)?),
        Command::Legendre { a, p } => sign_report(legendre_rational(&a.0, &p.0)?),
        Command::Lambda4 { a } => sign_report(lambda4_unit(&a.0)?),
        Command::Lambda8 { a } => sign_report(lambda8_unit(&a.0)?),
        Command::GaussLemma { a, p } => sign_report(gauss_lemma_sign(&a.0, &p.0)?),
        Command::Lattice { p, q } => {
            let (m, n) = lattice_counts(&p.0, &q.0)?;
            report(format!("M = {m}, N = {n}"), json!({"m": m, "n": n}))
        }
        Command::Reciprocity { p, q } => bool_report(reciprocity_check(&p.0, &q.0)?),
        Command::Psi { a, n } => sign_report(psi(&a.0, &n.0)?),
        Command::Kronecker { a, x } => sign_report(kronecker_chi(&a.0, &x.0)?),
        Command::CharBasis { m } => {
            let basis = strings(&quadratic_char_basis(&m.0)?);
            report(basis.join("\n"), json!({"basis": basis}))
        }
        Command::GroupSign { m } => sign_report(group_product_sign(&m.0)?),
        Command::BinomialPrime { n } => bool_report(binomial_primality(*n)?),
        Command::Padic { op, x, y, p } => {
            let op = ArithOp::from_str(op)?;
            let (x, y) = (padic_arg(x, &p.0, prec)?, padic_arg(y, &p.0, prec)?);
            padic_report(&arith(op, &x, &y)?)
        }
        Command::Hensel { p, x0, coeffs } => {
            let f = IntPolynomial::new(coeffs.iter().map(|c| c.0.clone()).collect());
            let x0 = padic_arg(x0, &p.0, 1)?;
            let root = hensel_lift(&f, &x0, prec)?;
            let mut r = padic_report(&root);
            r.json["polynomial"] = json!(f.to_string());
            r
        }
        Command::PadicSqrt { x, p } => match padic_sqrt(&padic_arg(x, &p.0, prec)?)? {
            Some(r) => padic_report(&r),
            None => report("none", json!({"text": null})),
        },
        Command::Teichmuller { a, p } => padic_report(&teichmuller(&a.0, &p.0, prec)?),
        Command::UnitDecompose { x, p } => {
            let (tau, u1) = unit_decompose(&padic_arg(x, &p.0, prec)?)?;
            report(
                format!("omega = {tau}\nu1 = {u1}"),
                json!({"omega": padic_json(&tau), "u1": padic_json(&u1)}),
            )
        }
        Command::VpFactorial { n, p } => {
            let (v, t) = vp_factorial(*n, &p.0)?;
            report(format!("v = {v}, unit = {t} (mod {})", p.0), json!({"valuation": v, "unit_mod_p": t.to_string()}))
        }
        Command::SqrtSeries { x } => padic_report(&sqrt_series_1p8x(&x.0, prec)?),
        Command::Digits { x, p, scheme } => {
            let ds = strings(&digits(&padic_arg(x, &p.0, prec)?, DigitScheme::from_str(scheme)?)?);
            report(ds.join(" "), json!({"digits": ds}))
        }
        Command::SquareClass { x, p } => {
            let c = square_class(&padic_arg(x, &p.0, prec)?)?;
            report(
                c.label(),
                json!({"label": c.label(), "representative": c.representative().to_string(), "square": c.is_square()}),
            )
        }
        Command::Hilbert { a, b, place, all } => match place {
            Some(v) if !all => sign_report(hilbert_symbol(&a.0, &b.0, &v.0)?),
            _ => {
                let vec = hilbert_vector(&a.0, &b.0)?;
                let json: Value = serde_json::from_str(&vec.to_json()).expect("symbol vectors serialize");
                report(vec.to_string(), json)
            }
        },
        Command::Witness { a, b, place } => match local_solve_witness(&a.0, &b.0, &place.0, prec)? {
            None => report("none", json!({"witness": null})),
            Some(w) => {
                let acc = match w.accuracy {
                    Accuracy::Exact => "exact".to_string(),
                    Accuracy::Digits(n) => format!("mod {}^{n}", place.0),
                    Accuracy::Tolerance(t) => format!("within {t:e}"),
                };
                report(
                    format!("x = {}, y = {} ({acc})", w.x, w.y),
                    json!({"witness": {"x": w.x.to_string(), "y": w.y.to_string(), "accuracy": acc}}),
                )
            }
        },
        Command::LocalNorm { a, b, place } => bool_report(is_local_norm(&a.0, &b.0, &place.0)?),
        Command::ExtChars { p } => {
            let rows = ext_char_correspondence(&p.0)?;
            let text: Vec<String> = rows.iter().map(|(b, c)| format!("sqrt({b}) <-> {c}")).collect();
            let json: Vec<Value> =
                rows.iter().map(|(b, c)| json!({"b": b.to_string(), "character": c.to_string()})).collect();
            report(text.join("\n"), json!({"table": json}))
        }
        Command::Descent { a, b, c, d, x, y, s, backward } => {
            let frame = DescentFrame::new(a.0.clone(), b.0.clone(), c.0.clone(), d.0.clone())?;
            let dir = if *backward { Direction::Backward } else { Direction::Forward };
            let (u, v, w) = descent_step(&frame, &(x.0.clone(), y.0.clone(), s.0.clone()), dir)?;
            report(format!("({u}, {v}, {w})"), json!({"triple": [u.to_string(), v.to_string(), w.to_string()]}))
        }
        Command::Solve { a, b } => {
            let cert = solve_conic(&a.0, &b.0)?;
            let rep = cert.to_report();
            report(cert.to_string(), serde_json::from_str(&rep.to_json()).expect("reports serialize"))
        }
        Command::Ternary { a, b, c } => match legendre_ternary(&a.0, &b.0, &c.0)? {
            TernaryOutcome::Solution(x, y, z) => report(
                format!("({x}, {y}, {z})"),
                json!({"solution": [x.to_string(), y.to_string(), z.to_string()]}),
            ),
            TernaryOutcome::SameSign => report("none: coefficients have the same sign", json!({"solution": null, "reason": "same_sign"})),
            TernaryOutcome::NotResidue { coefficient, prime } => report(
                format!("none: condition at {prime} (coefficient {coefficient}) fails"),
                json!({"solution": null, "reason": "not_residue", "coefficient": coefficient.to_string(), "prime": prime.to_string()}),
            ),
        },
        Command::GlobalNorm { a, b } => {
            let c = global_is_norm(&a.0, &b.0)?;
            let text = match (&c.witness, c.is_norm) {
                (Some((y, z)), _) => format!("true: {} = ({z})^2 - {} ({y})^2", a.0, b.0),
                (None, true) => "true".to_string(),
                (None, false) => format!("false: not a local norm at {{{}}}", strings(&c.failing_places).join(", ")),
            };
            report(
                text,
                json!({
                    "is_norm": c.is_norm,
                    "witness": c.witness.as_ref().map(|(y, z)| json!({"y": y.to_string(), "z": z.to_string()})),
                    "failing_places": strings(&c.failing_places),
                }),
            )
        }
        Command::Bernoulli { k } => {
            let bk = bernoulli(*k);
            report(bk.to_string(), json!({"value": bk.to_string()}))
        }
        Command::Vonstaudt { k } => {
            let w = von_staudt_w(*k)?;
            report(w.to_string(), json!({"value": w.to_string()}))
        }
        Command::PowerSum { k, n } => {
            let s = power_sum(*k, *n)?;
            report(s.to_string(), json!({"value": s.to_string()}))
        }
        Command::Frac { x, p } => {
            let f = if x.contains("O(") {
                p_frac_part_padic(&PAdic::parse(x, &p.0)?)?
            } else {
                p_frac_part(&parse_rational(x)?, &p.0)?
            };
            report(f.to_string(), json!({"value": f.to_string()}))
        }
        Command::Conductor { d, p } => {
            let chi = LocalCharacter::of_extension(&d.0, &Place::finite(p.0.clone())?)?;
            let a = conductor_exponent(&chi)?;
            report(a.to_string(), json!({"character": chi.to_string(), "exponent": a}))
        }
        Command::RootNumber { d, place, gamma } => {
            let chi = LocalCharacter::of_extension(&d.0, &place.0)?;
            let w = local_root_number_with(&chi, &gamma.0)?;
            report(format_complex(w), json!({"character": chi.to_string(), "re": w.re, "im": w.im}))
        }
        Command::RootProduct { d } => {
            let factors = root_number_factors(&d.0)?;
            let prod = root_number_product(&d.0)?;
            let mut lines: Vec<String> =
                factors.iter().map(|(v, chi, w)| format!("W_{v}({chi}) = {}", format_complex(*w))).collect();
            lines.push(format!("product = {}", format_complex(prod)));
            let fs: Vec<Value> = factors
                .iter()
                .map(|(v, chi, w)| json!({"place": v.to_string(), "character": chi.to_string(), "re": w.re, "im": w.im}))
                .collect();
            report(lines.join("\n"), json!({"factors": fs, "product": {"re": prod.re, "im": prod.im}}))
        }
        Command::Scan(s) => {
            return Ok(Outcome::Scan(match s {
                ScanCommand::Reciprocity { max_prime } => scan::reciprocity(*max_prime)?,
                ScanCommand::ProductFormula { count, bound, seed } => scan::product_formula(*count, *bound, *seed)?,
                ScanCommand::Vonstaudt { max_k } => scan::vonstaudt(*max_k)?,
            }))
        }
        Command::Bost => {
            let d = bost_demo()?;
            let text = format!(
                "43112609 = {} (mod 502)\n2^{} = {} (mod 503)\np = {} (mod 503)\nlambda_p(2012) = lambda_503({}) = {}\nvia {} = {}: {}",
                d.exponent_mod,
                d.exponent_mod,
                d.two_power,
                d.p_mod,
                d.minus_p_mod,
                d.euler_sign,
                d.p_mod,
                strings(&d.factors).join("*"),
                d.factored_sign,
            );
            report(
                text,
                json!({
                    "exponent_mod": d.exponent_mod,
                    "two_power": d.two_power,
                    "p_mod": d.p_mod,
                    "minus_p_mod": d.minus_p_mod,
                    "euler_sign": sign_json(d.euler_sign),
                    "factored_sign": sign_json(d.factored_sign),
                    "factors": d.factors,
                }),
            )
        }
    };
    Ok(Outcome::Done(r))
}

fn root_report(r: Option<BigInt>) -> Report {
    match r {
        Some(r) => report(r.to_string(), json!({"root": r.to_string()})),
        None => report("none", json!({"root": null})),
    }
}

/// Every command takes signed numbers as positionals.
fn negatives_allowed(cmd: clap::Command) -> clap::Command {
    cmd.allow_negative_numbers(true).mut_subcommands(negatives_allowed)
}

fn emit(r: &Report, json: bool) {
    // a closed pipe is not an error worth reporting
    let mut out = std::io::stdout().lock();
    let _ = if json { writeln!(out, "{}", r.json) } else { writeln!(out, "{}", r.text) };
}

fn main() -> ExitCode {
    env_logger::init();
    let matches = negatives_allowed(Cli::command()).get_matches();
    let cli = Cli::from_arg_matches(&matches).unwrap_or_else(|e| e.exit());
    match run(&cli) {
        Ok(Outcome::Done(r)) => {
            emit(&r, cli.json);
            ExitCode::SUCCESS
        }
        Ok(Outcome::Scan(s)) => {
            emit(&s.report, cli.json);
            if s.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                if !cli.json {
                    let mut out = std::io::stdout().lock();
                    for f in &s.failures {
                        let _ = writeln!(out, "counterexample: {f}");
                    }
                }
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 1 } else { 2 })
        }
    }
}
