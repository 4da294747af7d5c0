#![no_main]

use std::str::FromStr;

use libfuzzer_sys::fuzz_target;
use qrlab::arith::Place;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(v) = Place::from_str(s) {
        assert_eq!(Place::from_str(&v.to_string()).unwrap(), v);
    }
});
