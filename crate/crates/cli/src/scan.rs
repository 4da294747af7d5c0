use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use qrlab::analytic::von_staudt_scan;
use qrlab::arith::{is_prime, Rational};
use qrlab::hilbert::{candidate_places, hilbert_symbol};
use qrlab::symbols::reciprocity_check;
use qrlab::{Error, Sign};

use crate::Report;

/// A scan result: the report plus the counterexamples, listed in input
/// order.
pub struct ScanResult {
    pub report: Report,
    pub failures: Vec<String>,
}

fn finish(text: String, json: serde_json::Value, failures: Vec<String>) -> ScanResult {
    let mut json = json;
    json["failures"] = json!(failures);
    ScanResult {
        report: Report { text, json },
        failures,
    }
}

pub fn reciprocity(max_prime: u64) -> Result<ScanResult, Error> {
    let primes: Vec<BigInt> = (3..max_prime)
        .step_by(2)
        .map(BigInt::from)
        .filter(is_prime)
        .collect();
    let rows: Vec<Result<Vec<String>, Error>> = (0..primes.len())
        .into_par_iter()
        .map(|i| {
            let mut bad = Vec::new();
            for q in &primes[i + 1..] {
                if !reciprocity_check(&primes[i], q)? {
                    bad.push(format!("({}, {q})", primes[i]));
                }
            }
            Ok(bad)
        })
        .collect();
    let mut failures = Vec::new();
    for r in rows {
        failures.extend(r?);
    }
    let n = primes.len() as u64;
    let pairs = n * n.saturating_sub(1) / 2;
    let text = format!("{n} primes, {pairs} pairs, {} failures", failures.len());
    Ok(finish(text, json!({"primes": n, "pairs": pairs}), failures))
}

fn random_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    let n = rng.gen_range(1..=bound) * if rng.gen::<bool>() { 1 } else { -1 };
    Rational::new(BigInt::from(n), BigInt::from(rng.gen_range(1..=bound)))
}

/// `count` random pairs with numerators and denominators up to `bound`.
/// Pair `i` draws from a generator seeded with `seed + i`, so the sample
/// does not depend on how the work is split.
pub fn product_formula(count: u64, bound: i64, seed: u64) -> Result<ScanResult, Error> {
    if bound < 1 {
        return Err(Error::OutOfRange(format!("bound must be positive, got {bound}")));
    }
    let rows: Vec<Result<Option<String>, Error>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i));
            let a = random_rational(&mut rng, bound);
            let b = random_rational(&mut rng, bound);
            let mut prod = Sign::Plus;
            for v in candidate_places(&a, &b)? {
                prod = prod * hilbert_symbol(&a, &b, &v)?;
            }
            Ok(prod.is_minus().then(|| format!("({a}, {b})")))
        })
        .collect();
    let mut failures = Vec::new();
    for r in rows {
        failures.extend(r?);
    }
    let text = format!("{count} pairs, {} failures", failures.len());
    Ok(finish(text, json!({"pairs": count, "bound": bound, "seed": seed}), failures))
}

pub fn vonstaudt(max_k: u64) -> Result<ScanResult, Error> {
    match von_staudt_scan(max_k) {
        Ok(ws) => {
            let values: Vec<_> = ws.iter().map(|(k, w)| json!({"k": k, "w": w.to_string()})).collect();
            let mut text = format!("{} values of W_k for even k <= {max_k}, 0 failures", ws.len());
            for (k, w) in &ws {
                text.push_str(&format!("\nW_{k} = {w}"));
            }
            Ok(finish(text, json!({"values": values}), Vec::new()))
        }
        Err(Error::Invariant(msg)) => Ok(finish(format!("1 failure: {msg}"), json!({}), vec![msg])),
        Err(e) => Err(e),
    }
}
