#![no_main]

use libfuzzer_sys::fuzz_target;
use qrlab::hilbert::SymbolVector;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(v) = SymbolVector::from_json(s) {
        assert_eq!(SymbolVector::from_json(&v.to_json()).unwrap(), v);
        let _ = v.to_string();
    }
});
