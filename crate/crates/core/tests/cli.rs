//! Runs the compiled binary the way a user would.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schwarzfn")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let text = String::from_utf8(out.stdout).unwrap();
    let value: Value = serde_json::from_str(text.trim())
        .unwrap_or_else(|e| panic!("{args:?} printed invalid JSON ({e}): {text}"));
    (value, out.status.code().unwrap())
}

const UNIT: &str = "x^2+y^2-1";

#[test]
fn every_subcommand_emits_versioned_json() {
    let cases: &[&[&str]] = &[
        &["complexify", "--curve", UNIT],
        &["realify", "--qform", "z*w-1"],
        &["branches", "--curve", UNIT, "--order", "4"],
        &["condition-a", "--curve", "y"],
        &["classify", "--curve", "x^2/4+y^2-1"],
        &["singular", "--curve", "(x^2+y^2)^2-2*(x^2+y^2)-(x^2-y^2)"],
        &["preset", "--kind", "rose", "--params", "1,2,1"],
        &["image", "--map", "z^2", "--curve", UNIT],
        &["maps-into", "--map", "z+1/z", "--source", UNIT, "--target", "y"],
        &["blaschke-check", "--map", "(z-1/2)/(1-z/2)"],
        &["blaschke-factor", "--map", "z^2*(z-1/2)/(1-z/2)"],
        &["unimodular-locus", "--map", "z+1"],
        &["ps-bound", "--p1", "z", "--p2", "z+1"],
        &["verify-identity", "--map", "z+1/z", "--source", UNIT, "--target", "y", "--base", "0,1", "--samples", "20"],
        &["verify-involution", "--curve", UNIT, "--base", "0.6,0.8", "--samples", "20"],
    ];
    for args in cases {
        let (v, code) = json(args);
        assert_eq!(code, 0, "{args:?}: {v}");
        assert_eq!(v["status"], "ok", "{args:?}: {v}");
        assert!(v["schema_version"].is_u64(), "{args:?}: {v}");
        assert!(v["diagnostics"].is_array(), "{args:?}: {v}");
    }
}

#[test]
fn documented_outputs() {
    let (v, _) = json(&["complexify", "--curve", UNIT]);
    assert_eq!(v["result"]["Q"], "z*w - 1");
    let (v, _) = json(&["condition-a", "--curve", "y"]);
    assert_eq!(v["result"]["holds"], false, "{v}");
    let (v, _) = json(&["blaschke-check", "--map", "(z-1/2)/(1-z/2)"]);
    assert_eq!(v["result"]["circle_preserving"], true, "{v}");
}

#[test]
fn operation_errors_exit_one_with_a_code() {
    let (v, code) = json(&["blaschke-factor", "--map", "z^2+1"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "error");
    assert!(v["error"]["code"].is_string());
    assert!(v["schema_version"].is_u64());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["complexify"]).status.code(), Some(2));
    assert_eq!(run(&["complexify", "--curve", "x^^2"]).status.code(), Some(2));
}

#[test]
fn paper_suite_passes() {
    let out = run(&["paper-suite"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    let (v, code) = json(&["paper-suite"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
}
