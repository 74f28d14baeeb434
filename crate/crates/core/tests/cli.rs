use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lame-bessel")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn eval_matches_classical_bessel() {
    let out = bin(&["eval", "--p", "2", "--eta", "2.404825557695773,0", "--rep", "oscillatory"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["status"], "pass");
    assert!(v["result"]["value"].as_f64().unwrap().abs() < 1e-7);
}

#[test]
fn prop25_third_derivative_band() {
    let out = bin(&["prop25", "--p", "2/3", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json_of(&out);
    assert_eq!(v["result"]["n"], 3);
    assert!(v["result"]["min_abs"].as_f64().unwrap() > 0.0);
}

#[test]
fn identity_verify_small_case() {
    let out = bin(&["identity-verify", "--p", "2", "--beta", "1", "--s", "1.5", "--x", "0,0", "--cutoff", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["result"]["pass"], true);
    let csv = bin(&["identity-verify", "--p", "2", "--beta", "1", "--s", "1.5", "--cutoff", "4", "--format", "csv"]);
    assert!(String::from_utf8(csv.stdout).unwrap().starts_with("p,beta,s,x1,x2,"));
    assert!(v["result"]["abs_gap"].as_f64().unwrap() <= v["result"]["tail_bound"].as_f64().unwrap());
}

#[test]
fn file_output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.json");
    let path = path.to_str().unwrap();
    let args = ["error-sweep", "--p", "2/3", "--r-max", "40", "--n-r", "20", "--random", "true", "--seed", "5", "--output", path];
    assert_eq!(bin(&args).status.code(), Some(0));
    let first = std::fs::read(path).unwrap();
    assert_eq!(bin(&args).status.code(), Some(0));
    assert_eq!(first, std::fs::read(path).unwrap());
    let v: Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(v["result"]["rows"].as_array().unwrap().len(), 20);
}

#[test]
fn csv_output_has_header() {
    let out = bin(&["lattice-count", "--p", "1", "--s", "2.5", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("count,s,strict"));
    assert!(lines.next().unwrap().starts_with("13,"));
}

#[test]
fn exit_codes() {
    // Domain error: p outside its range.
    let out = bin(&["eval", "--p", "-1", "--eta", "1,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["reason"]["kind"], "domain");
    // Failed verification: the fifth derivative at p = 2/5 does not settle on this range.
    let out = bin(&["prop25", "--p", "2/5", "--n", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["status"], "fail");
    // Unwritable output path is a resource error.
    let out = bin(&["lattice-count", "--p", "2", "--s", "3", "--output", "/nonexistent-dir/x.json"]);
    assert_eq!(out.status.code(), Some(2));
}
