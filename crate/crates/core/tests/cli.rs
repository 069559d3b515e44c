use std::fs;
use std::process::{Command, Output};

use ipowers::fixtures::{self, FIXTURE_ENV};
use ipowers::udot::Dot;
use num_bigint::BigInt;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ipowers"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_matches_displayed_example() {
    let o = run(&["compute", "--family", "t-ev", "--n", "2", "--format", "latex"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "b^{(2)} + q [h;0]");
}

#[test]
fn compute_trivial() {
    let o = run(&["compute", "--family", "k-odd", "--n", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn compute_methods_agree_in_json() {
    let fky = run(&["compute", "--family", "t-odd", "--n", "4", "--method", "fky", "--format", "json"]);
    let closed = run(&["compute", "--family", "t-odd", "--n", "4", "--method", "closed", "--format", "json"]);
    assert!(fky.status.success());
    assert_eq!(fky.stdout, closed.stdout);
    let again = run(&["compute", "--family", "t-odd", "--n", "4", "--method", "fky", "--format", "json"]);
    assert_eq!(fky.stdout, again.stdout);
}

#[test]
fn specialize_emits_dot_json() {
    let o = run(&["specialize", "--family", "t-ev", "--n", "2", "--weight", "0", "--format", "json"]);
    assert!(o.status.success());
    let d: Dot<BigInt> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(d.weight(), 0);
    assert_eq!(d.len(), 3);
}

#[test]
fn specialize_reports_positivity() {
    let o = run(&["specialize", "--family", "t-ev", "--n", "2", "--weight", "0", "--cb"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("positivity: true"));
    let o = run(&["cb", "--family", "k-odd", "--n", "5", "--weight-min", "-5", "--weight-max", "5", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let items = v.as_array().unwrap();
    assert_eq!(items.len(), 6);
    assert!(items.iter().all(|i| i["positivity"] == true));
}

#[test]
fn parity_mismatch_exits_2() {
    let o = run(&["specialize", "--family", "t-ev", "--n", "1", "--weight", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["module", "--family", "t-odd", "--n", "1", "--hw", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["compute", "--family", "nope", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "--family", "t-ev"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn module_image() {
    let o = run(&["module", "--family", "t-ev", "--n", "2", "--hw", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "q^-1 v+ + F^(2) v+");
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.tex");
    let o = run(&["compute", "--family", "t-odd", "--n", "3", "--format", "latex", "--output", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(path).unwrap();
    assert!(text.starts_with("b^{(3)}"));
}

#[test]
fn verify_suites_pass() {
    let o = run(&["verify", "--suite", "closed", "--max-n", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = run(&["verify", "--suite", "module", "--max-hw", "6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.as_array().unwrap().iter().all(|e| e["status"] == "pass"));
}

#[test]
fn corrupted_golden_fails() {
    let dir = tempfile::tempdir().unwrap();
    for entry in fs::read_dir(fixtures::default_dir()).unwrap() {
        let p = entry.unwrap().path();
        fs::copy(&p, dir.path().join(p.file_name().unwrap())).unwrap();
    }
    let target = dir.path().join(fixtures::file_name(ipowers::idp::Family::TEv, 3));
    let text = fs::read_to_string(&target).unwrap();
    fs::write(&target, text.replacen("q^3[h;-1]F", "q^2[h;-1]F", 1)).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_ipowers"))
        .args(["verify", "--suite", "all", "--max-n", "4", "--max-hw", "3", "--weight-min", "-4", "--weight-max", "4"])
        .env(FIXTURE_ENV, dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL golden-display family=t-ev n=3"));

    // the same run against intact copies passes
    fs::write(&target, text).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_ipowers"))
        .args(["verify", "--suite", "golden"])
        .env(FIXTURE_ENV, dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}
