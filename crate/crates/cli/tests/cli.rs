use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_carries-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn classical_matrix() {
    let v = json(&["matrix", "--sign", "+", "--b", "2", "--n", "2", "--p", "1"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["matrix"], serde_json::json!([["3/4", "1/4"], ["1/4", "3/4"]]));
}

#[test]
fn matrix_csv_and_oracle_agree() {
    let closed = run(&["--format", "csv", "matrix", "--sign", "-", "--b", "5", "--n", "3", "--p", "3/2"]);
    let oracle = run(&[
        "--format", "csv", "matrix", "--sign", "-", "--b", "5", "--n", "3", "--p", "3/2", "--oracle",
    ]);
    assert!(closed.status.success());
    assert_eq!(closed.stdout, oracle.stdout);
    assert_eq!(String::from_utf8(closed.stdout).unwrap().lines().count(), 4);
}

#[test]
fn matrix_from_digit_set() {
    let v = json(&["matrix", "--sign", "+", "--b", "3", "--n", "3", "--d", "-1"]);
    assert_eq!(v["params"]["p"], "1");
    assert_eq!(v["matrix"].as_array().unwrap().len(), 3);
}

#[test]
fn eigen_check_line() {
    let out = run(&["eigen", "--sign", "-", "--b", "8", "--n", "3", "--p", "3", "--check"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "R·L=I: ok, P=RDL: ok");
}

#[test]
fn stationary_moments() {
    let v = json(&["moments", "--sign", "-", "--b", "8", "--n", "3", "--p", "3", "--stationary", "--oracle"]);
    assert_eq!(v["mean"], "5/3");
    assert_eq!(v["covariance"], "-1/24");
}

#[test]
fn float_rendering() {
    let v = json(&[
        "--float", "--digits", "4", "moments", "--sign", "-", "--b", "8", "--n", "3", "--p", "3", "--stationary",
    ]);
    assert_eq!(v["mean"], "1.6667");
}

#[test]
fn invalid_input_exits_with_two() {
    assert_eq!(run(&["matrix", "--sign", "+", "--b", "4", "--n", "2", "--p", "2"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(run(&["moments", "--sign", "+", "--b", "2", "--n", "1", "--p", "1"]).status.code(), Some(2));
    assert_eq!(run(&["digits", "--x", "5", "--sign", "+", "--b", "3", "--d", "-2"]).status.code(), Some(2));
}

#[test]
fn verify_restricted_suites() {
    let v = json(&["verify", "bijection-plus", "--b", "3", "--n", "2", "--p", "1", "--N", "2"]);
    assert_eq!(v["passed"], true);
    let detail = v["cases"][0]["detail"].as_str().unwrap();
    assert!(detail.starts_with("81/81"), "{detail}");
    let v = json(&["verify", "gessel", "--n", "2", "--p", "2", "--cutoff", "3"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["cases"].as_array().unwrap().len(), 3);
}

#[test]
fn seeded_output_is_byte_stable() {
    let args = ["shuffle", "--sign", "-", "--b", "8", "--n", "3", "--p", "3", "--N", "4", "--summands"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let reseeded: Vec<&str> = ["--seed", "7"].into_iter().chain(args).collect();
    let c = run(&reseeded);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn simulate_reports_carries() {
    let v = json(&["simulate", "--sign", "+", "--b", "10", "--n", "4", "--p", "3", "--N", "50"]);
    let text = v.to_string();
    assert!(text.contains("kappas"), "{text}");
}

#[test]
fn writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("digits.json");
    let out = run(&[
        "--out",
        path.to_str().unwrap(),
        "digits",
        "--x",
        "10",
        "--sign",
        "-",
        "--b",
        "3",
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["digits"], serde_json::json!([1, 0, 1]));
}
