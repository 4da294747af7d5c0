#![no_main]

use libfuzzer_sys::fuzz_target;
use num_bigint::BigInt;
use qrlab::padic::PAdic;

const PRIMES: [u32; 8] = [2, 3, 5, 7, 11, 13, 101, 65537];

// The first byte picks the prime, the rest is the literal.
fuzz_target!(|data: &[u8]| {
    let Some((&sel, rest)) = data.split_first() else { return };
    let Ok(s) = std::str::from_utf8(rest) else { return };
    let p = BigInt::from(PRIMES[sel as usize % PRIMES.len()]);
    if let Ok(x) = PAdic::parse(s, &p) {
        assert_eq!(PAdic::parse(&x.to_string(), &p).unwrap(), x);
    }
});
