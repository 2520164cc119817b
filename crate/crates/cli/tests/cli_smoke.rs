//! End-to-end tests of the `gjack` binary: output shapes, cache behaviour,
//! and exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn gjack(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gjack"))
        .args(args)
        .env_remove("GJACK_CACHE")
        .output()
        .expect("spawning gjack")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn expand_single_box() {
    let out = gjack(&["expand", "--r", "1", "--mp", "[1]"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "J_[1] = (t2)*s_[1]");
}

#[test]
fn expand_accepts_parenthesized_diagrams() {
    let bare = gjack(&["expand", "--r", "2", "--mp", "[1],[]"]);
    let paren = gjack(&["expand", "--r", "2", "--mp", "([1],[])"]);
    assert!(bare.status.success());
    assert_eq!(stdout(&bare), stdout(&paren));
}

#[test]
fn expand_rejects_oversized_diagram() {
    let out = gjack(&["expand", "--r", "1", "--mp", "[9]", "--max-n", "8"]);
    assert!(!out.status.success());
}

#[test]
fn expand_json_specialized_records_assignment() {
    let out = gjack(&[
        "expand", "--r", "1", "--mp", "[2]", "--format", "json", "--mode", "specialized",
        "--seed", "11",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["header"]["mode"], "specialized");
    assert_eq!(v["header"]["seed"], 11);
    assert_eq!(v["header"]["assignment"].as_array().unwrap().len(), 3);
    // Same seed, same assignment, bit-identical output.
    let again = gjack(&[
        "expand", "--r", "1", "--mp", "[2]", "--format", "json", "--mode", "specialized",
        "--seed", "11",
    ]);
    assert_eq!(stdout(&out), stdout(&again));
}

#[test]
fn latex_output_subscripts_parameters() {
    let out = gjack(&["expand", "--r", "1", "--mp", "[2]", "--format", "latex"]);
    assert!(out.status.success());
    let s = stdout(&out);
    assert!(s.contains("t_1") || s.contains("t_2"), "got {s}");
    assert!(!s.contains("t1"), "unconverted variable in {s}");
}

#[test]
fn table_lists_every_diagram_of_the_degree() {
    let out = gjack(&["table", "--r", "2", "--n", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 5);
}

#[test]
fn matrix_cache_round_trip_is_bit_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |d: &Path| {
        gjack(&[
            "matrix", "--r", "2", "--n", "2", "--kind", "tstar", "--cache-dir",
            d.to_str().unwrap(),
        ])
    };
    let cold = run(dir.path());
    assert!(cold.status.success());
    assert!(dir.path().join("Tstar_r2_n2_symbolic.json").exists());
    let warm = run(dir.path());
    assert!(warm.status.success());
    assert_eq!(stdout(&cold), stdout(&warm));
}

#[test]
fn cache_dir_flag_overrides_environment() {
    let flag_dir = tempfile::tempdir().unwrap();
    let env_dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_gjack"))
        .args([
            "matrix", "--r", "1", "--n", "1", "--cache-dir",
            flag_dir.path().to_str().unwrap(),
        ])
        .env("GJACK_CACHE", env_dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(flag_dir.path().join("T_r1_n1_symbolic.json").exists());
    assert!(!env_dir.path().join("T_r1_n1_symbolic.json").exists());
}

#[test]
fn verify_reference_suite_exits_zero() {
    let out = gjack(&["verify", "--suite", "reference", "--r", "1"]);
    assert!(out.status.success());
    let reports: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(reports
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["status"] == "pass"));
}

#[test]
fn verify_unknown_suite_exits_nonzero() {
    let out = gjack(&["verify", "--suite", "nonsense", "--r", "1"]);
    assert!(!out.status.success());
}
