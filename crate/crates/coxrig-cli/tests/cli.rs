//! End-to-end CLI tests: exit codes and byte-exact golden JSON.

use std::path::PathBuf;
use std::process::{Command, Output};

fn coxrig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxrig"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    format!("tests/data/{name}")
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).expect("golden file exists")
}

fn assert_golden(args: &[&str], golden_name: &str, expected_code: i32) {
    let out = coxrig(args);
    let stdout = String::from_utf8(out.stdout).expect("utf8 output");
    assert_eq!(stdout, golden(golden_name), "stdout mismatch for {args:?}");
    assert_eq!(out.status.code(), Some(expected_code), "exit code for {args:?}");
}

#[test]
fn check_out_of_class_exits_one() {
    assert_golden(&["--json", "check", &data("i26.cox")], "check_i26.json", 1);
}

#[test]
fn check_in_class_exits_zero() {
    assert_golden(&["--json", "check", &data("ex3.cox")], "check_ex3.json", 0);
    assert_golden(&["--json", "check", &data("b2_named.cox")], "check_b2_named.json", 0);
}

#[test]
fn spherical_families() {
    assert_golden(&["--json", "spherical", &data("ex3.cox")], "spherical_ex3.json", 0);
}

#[test]
fn iso_finds_relabelings() {
    assert_golden(&["--json", "iso", &data("a1a2.cox"), &data("a2a1.cox")], "iso_a1a2.json", 0);
    let out = coxrig(&["--json", "iso", &data("a1a2.cox"), &data("i26.cox")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{\"isomorphic\":false}\n");
}

#[test]
fn abelianize_reports_components() {
    assert_golden(&["--json", "abelianize", &data("ex3.cox")], "abelianize_ex3.json", 0);
}

#[test]
fn verify_dihedral_split() {
    assert_golden(&["--json", "verify", &data("i26.cox")], "verify_i26.json", 1);
}

#[test]
fn verify_rigid_exits_zero() {
    let out = coxrig(&["--json", "verify", &data("b2_named.cox")]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("\"rigid\":true"));
    assert!(stdout.contains("\"exhausted\":true"));
}

#[test]
fn verify_limits_exit_two() {
    let out = coxrig(&["--json", "verify", &data("ex3.cox"), "--max-order", "10"]);
    // The example matrix is infinite, so the verdict errors before limits.
    assert_eq!(out.status.code(), Some(3));

    let out = coxrig(&["--json", "verify", &data("i26.cox"), "--max-order", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn census_streams_records() {
    assert_golden(&["census", "--rank", "2", "--labels", "2,3,4,5,6,inf"], "census_rank2.jsonl", 0);
    assert_golden(&["census", "--rank", "3", "--labels", "2,4,inf"], "census_rank3.jsonl", 0);
}

#[test]
fn census_is_reproducible() {
    let first = coxrig(&["census", "--rank", "2", "--labels", "3,inf"]);
    let second = coxrig(&["census", "--rank", "2", "--labels", "3,inf"]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn parse_errors_exit_three() {
    let out = coxrig(&["check", &data("missing.cox")]);
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("error"));
}

#[test]
fn human_output_mentions_conditions() {
    let out = coxrig(&["check", &data("i26.cox")]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("condition (0): fails"));
    assert_eq!(out.status.code(), Some(1));
}
