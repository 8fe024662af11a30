//! The `extalg` binary end to end: output lines and exit codes.

use std::process::{Command, Output};

fn extalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extalg"))
        .args(args)
        .env_remove("EXTALG_CATALOG")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn invariants_of_r4_5() {
    let out = extalg(&["invariants", "--algebra", "R4_5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("dim_der = 5"), "{text}");
    assert!(text.contains("associative = false"), "{text}");
}

#[test]
fn associativity_counterexample_exits_one() {
    let out = extalg(&[
        "check-identity",
        "--algebra",
        "R4_5",
        "--identity",
        "associative",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("(e1,e1,e2)"));
    let ok = extalg(&[
        "check-identity",
        "--algebra",
        "R4_9",
        "--identity",
        "associative",
    ]);
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn cohomology_of_r3s_1() {
    let out = extalg(&["cohomology", "--algebra", "R3s_1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("h2_dim = 4"));
}

#[test]
fn degeneration_row_is_verified() {
    let out = extalg(&["degenerate", "--row", "R4_9_to_R4_1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("Verified"));
}

#[test]
fn closed_set_exit_codes() {
    let held = extalg(&["closed-set", "--algebra", "R4_8", "--set", "R4_8_set"]);
    assert_eq!(held.status.code(), Some(0));
    let search = extalg(&[
        "closed-set",
        "--algebra",
        "R4_5",
        "--set",
        "R4_8_set",
        "--search",
        "50",
    ]);
    assert_eq!(search.status.code(), Some(1));
    assert!(stdout(&search).contains("NoBasisFound"));
}

#[test]
fn unknown_algebra_is_a_usage_error() {
    let out = extalg(&["invariants", "--algebra", "R9_9"]);
    assert_eq!(out.status.code(), Some(2));
}
