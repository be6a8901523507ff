use std::process::{Command, Output};

use ordclosure_cli::{exit, AnalysisReport};

fn ordclosure(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordclosure"))
        .arg("analyze")
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const EX1: &str = "x^4-20x^3-20x^2+17x+2";

#[test]
fn json_round_trip_is_byte_identical() {
    let o = ordclosure(&["--poly", EX1, "--format", "json"]);
    assert_eq!(code(&o), exit::OK);
    let text = stdout(&o);
    let report = AnalysisReport::from_json(&text).unwrap();
    assert_eq!(report.to_json() + "\n", text);
    assert!(report.certified);
}

#[test]
fn text_and_json_agree() {
    let json = AnalysisReport::from_json(&stdout(&ordclosure(&["--poly", EX1, "--format", "json"]))).unwrap();
    let text = stdout(&ordclosure(&["--poly", EX1]));
    assert!(text.contains(&format!("discriminant: {}", json.disc.value)));
    assert!(text.contains(&format!("trace dual quotient: Z/{}", json.dual_quotient_divisors.join(" x Z/"))));
    for p in &json.primes {
        assert!(text.contains(&format!("prime {}", p.p)));
        assert!(text.contains(&format!("method: {}", p.method)));
        assert!(text.contains(&format!("index: {}", p.index)));
    }
    let closure = json.closure.unwrap();
    assert!(text.contains(&format!("closure (den {}):", closure.den)));
    for row in &closure.rows {
        assert!(text.contains(&format!("[{}]", row.join(" "))));
    }
}

#[test]
fn coefficient_and_polynomial_input_match() {
    let a = stdout(&ordclosure(&["--poly", EX1, "--format", "json"]));
    let b = stdout(&ordclosure(&["--coeffs=2,17,-20,-20,1", "--format", "json"]));
    let (a, b) = (AnalysisReport::from_json(&a).unwrap(), AnalysisReport::from_json(&b).unwrap());
    assert_eq!(a.closure, b.closure);
    assert_eq!(a.primes, b.primes);
}

#[test]
fn restricted_prime() {
    let o = ordclosure(&["--poly", EX1, "--prime", "13", "--format", "json"]);
    assert_eq!(code(&o), exit::OK);
    let r = AnalysisReport::from_json(&stdout(&o)).unwrap();
    assert_eq!(r.primes.len(), 1);
    assert_eq!(r.primes[0].p, "13");
    assert_eq!(r.primes[0].method, "AlreadyMaximal");
    assert_eq!(r.primes[0].index, "1");
}

#[test]
fn table_input() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("sqrt5.json");
    std::fs::write(&path, r#"{"n": 2, "unit": [1, 0], "table": [[[1, 0], [0, 1]], [[0, 1], [5, 0]]]}"#).unwrap();
    let o = ordclosure(&["--table", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&o), exit::OK, "{}", stderr(&o));
    let r = AnalysisReport::from_json(&stdout(&o)).unwrap();
    assert_eq!(r.disc.value, "20");
    let p2 = r.primes.iter().find(|p| p.p == "2").unwrap();
    assert_eq!(p2.index, "2");
    assert!(!p2.certified);
    assert!(!r.certified);
}

#[test]
fn validation_errors_exit_two() {
    for args in [
        &["--poly", "x^2+y"][..],
        &["--poly", "2x^2+1"],
        &["--coeffs=1,0,1,2"],
        &["--coeffs=1,2,1"],
        &["--poly", EX1, "--prime", "91"],
        &["--table", "/nonexistent/table.json"],
        &["--poly", EX1, "--coeffs=1,1"],
        &[],
    ] {
        let o = ordclosure(args);
        assert_eq!(code(&o), exit::VALIDATION, "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn error_message_names_flag() {
    let o = ordclosure(&["--coeffs=1,x,1"]);
    assert_eq!(code(&o), exit::VALIDATION);
    assert!(stderr(&o).contains("--coeffs"), "{}", stderr(&o));
}

#[test]
fn unresolved_discriminant_exits_three() {
    // x^2 - (2^89 - 1)(2^107 - 1)
    let n = "-100433627766186892221372630609062766858404681029709092356097";
    let o = ordclosure(&[&format!("--coeffs={n},0,1"), "--rho-budget", "2000", "--format", "json"]);
    assert_eq!(code(&o), exit::UNRESOLVED, "{}", stderr(&o));
    let r = AnalysisReport::from_json(&stdout(&o)).unwrap();
    assert_eq!(r.disc.unresolved, n.trim_start_matches('-'));
    assert!(r.closure.is_none());
    assert!(!r.certified);
}

#[test]
fn seed_makes_output_deterministic() {
    let a = stdout(&ordclosure(&["--coeffs=-15625,-15625,-125,-625,1", "--seed", "9", "--format", "json"]));
    let b = stdout(&ordclosure(&["--coeffs=-15625,-15625,-125,-625,1", "--seed", "9", "--format", "json"]));
    assert_eq!(a, b);
}
