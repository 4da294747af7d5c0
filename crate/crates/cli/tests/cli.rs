use std::process::{Command, Output};

use qrlab::hasse::ConicReport;
use qrlab::hilbert::SymbolVector;

fn qrlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qrlab")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qrlab(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn code(args: &[&str]) -> i32 {
    qrlab(args).status.code().unwrap()
}

#[test]
fn goldens() {
    assert_eq!(stdout(&["legendre", "2", "7"]), "+1");
    assert_eq!(stdout(&["legendre", "3", "7"]), "-1");
    assert_eq!(
        stdout(&["solve", "2", "7", "--json"]),
        r#"{"a":"2","b":"7","outcome":"solution","places":[],"x":"1/3","y":"-1/3"}"#
    );
    assert_eq!(stdout(&["hilbert", "-1", "-1", "--all"]), "{inf:-1, 2:-1}");
    assert_eq!(stdout(&["hilbert", "-1", "-1", "inf"]), "-1");
    assert_eq!(stdout(&["hilbert", "2", "3", "5"]), "+1");
    assert_eq!(stdout(&["solve", "3", "5"]), "obstruction at {3, 5}");
    assert_eq!(stdout(&["sqrt-mod", "2", "7"]), "3");
    assert_eq!(stdout(&["sqrt-mod", "3", "7"]), "none");
    assert_eq!(stdout(&["lattice", "5", "7"]), "M = 1, N = 1");
    assert_eq!(stdout(&["group-sign", "8"]), "+1");
    assert_eq!(stdout(&["group-sign", "9"]), "-1");
    assert_eq!(stdout(&["vonstaudt", "12"]), "1");
    assert_eq!(stdout(&["bernoulli", "12"]), "-691/2730");
    assert_eq!(stdout(&["power-sum", "2", "4"]), "14");
    assert_eq!(stdout(&["root-number", "3", "inf"]), "1+0·i");
    assert_eq!(stdout(&["root-number", "-3", "inf"]), "0-1·i");
    assert!(stdout(&["root-product", "-5"]).ends_with("product = 1+0·i"));
    assert!(stdout(&["bost"]).ends_with("via 91 = 7*13: -1"));
}

#[test]
fn padic_round_trip_through_text() {
    let x = stdout(&["padic", "mul", "1/3", "5", "--p", "5", "--prec", "6"]);
    assert_eq!(x, "5^1 * (2 + 3*5 + 1*5^2 + 3*5^3 + 1*5^4 + 3*5^5) + O(5^7)");
    let back = stdout(&["padic", "div", &x, "5", "--p", "5", "--prec", "6"]);
    assert!(back.starts_with("5^0 * (2 + 3*5 + 1*5^2 + 3*5^3"), "{back}");
}

#[test]
fn json_outputs_parse_with_the_library() {
    let v = SymbolVector::from_json(&stdout(&["hilbert", "-1", "-1", "--json"])).unwrap();
    assert_eq!(v.to_string(), "{inf:-1, 2:-1}");
    for (a, b) in [("2", "7"), ("3", "5"), ("-1", "-1"), ("1/2", "5/3")] {
        let r = ConicReport::from_json(&stdout(&["solve", a, b, "--json"])).unwrap();
        assert!(r.to_certificate().unwrap().verify().unwrap());
    }
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["legendre", "7", "7"]), 2);
    assert_eq!(code(&["legendre", "2", "9"]), 2);
    assert_eq!(code(&["solve", "0", "1"]), 2);
    assert_eq!(code(&["hilbert", "1/0", "2"]), 2);
    assert_eq!(code(&["hilbert", "2", "3", "4"]), 2);
    assert_eq!(code(&["padic", "div", "1", "0", "--p", "5"]), 2);
    assert_eq!(code(&["no-such-command"]), 2);
    assert_eq!(code(&["vonstaudt", "3"]), 2);
}

#[test]
fn scans_pass() {
    assert_eq!(stdout(&["scan", "reciprocity", "100"]), "24 primes, 276 pairs, 0 failures");
    assert_eq!(stdout(&["scan", "product-formula", "300", "10000", "--seed", "7"]), "300 pairs, 0 failures");
    let v: serde_json::Value = serde_json::from_str(&stdout(&["scan", "vonstaudt", "40", "--json"])).unwrap();
    assert_eq!(v["values"].as_array().unwrap().len(), 20);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}
