//! End-to-end checks of the CLI surface: flag parsing, output shapes and
//! exit codes.

use std::process::{Command, Output};

fn circstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circstab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn analyze_emits_the_pinned_json_shape() {
    let out = circstab(&["analyze", "--n", "12", "--set", "2,3,6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let value: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    let keys: Vec<&str> = value
        .as_object()
        .unwrap()
        .keys()
        .map(|k| k.as_str())
        .collect();
    assert_eq!(
        keys,
        vec![
            "n",
            "set",
            "connected",
            "bipartite",
            "twin_free",
            "stable",
            "aut_x_order",
            "aut_bx_order",
            "wilson",
            "family",
            "edge_orbits_bx",
            "schema"
        ]
    );
    assert_eq!(value["n"], 12);
    assert_eq!(value["set"], serde_json::json!([2, 3, 6, 9, 10]));
    assert_eq!(value["stable"], false);
    assert_eq!(value["aut_x_order"], "48");
    assert_eq!(value["family"]["family"], "V5.1");
    assert_eq!(value["schema"], 1);
}

#[test]
fn analyze_accepts_the_braced_form_and_applies_closure() {
    let a = circstab(&["analyze", "--set", "Z12:{2,3,6}"]);
    let b = circstab(&["analyze", "--n", "12", "--set", "2,3,6"]);
    assert_eq!(stdout(&a), stdout(&b));
    // modulus mismatch is invalid input
    let bad = circstab(&["analyze", "--n", "10", "--set", "Z12:{2}"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn analyze_rejects_loops_with_exit_2() {
    let out = circstab(&["analyze", "--n", "6", "--set", "0,2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = circstab(&["analyze", "--set", "2,3"]);
    assert_eq!(out.status.code(), Some(2)); // --n required for bare lists
}

#[test]
fn analyze_csv_matches_column_contract() {
    let out = circstab(&["analyze", "--n", "12", "--set", "2,3,6", "--csv"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,set,connected,bipartite,twin_free,stable,aut_x_order,aut_bx_order,wilson,family,edge_orbits_bx,schema"
    );
    let row = lines.next().unwrap();
    assert!(row.starts_with("12,2;3;6;9;10,true,false,true,false,48,576,"));
    assert!(row.ends_with(",2,1"));
}

#[test]
fn enumerate_streams_sorted_records() {
    let out = circstab(&[
        "enumerate",
        "--n-min",
        "8",
        "--n-max",
        "10",
        "--valency",
        "2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let records: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    // 3 sets on Z_8, 4 on Z_9, 4 on Z_10
    assert_eq!(records.len(), 11);
    let keys: Vec<(u64, String)> = records
        .iter()
        .map(|r| (r["n"].as_u64().unwrap(), r["set"].to_string()))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn enumerate_dedup_multiplier_collapses_orbits() {
    let full = circstab(&[
        "enumerate",
        "--n-min",
        "10",
        "--n-max",
        "10",
        "--valency",
        "4",
    ]);
    let dedup = circstab(&[
        "enumerate",
        "--n-min",
        "10",
        "--n-max",
        "10",
        "--valency",
        "4",
        "--dedup-multiplier",
    ]);
    let count = |o: &Output| stdout(o).lines().count();
    assert!(count(&dedup) < count(&full));
}

#[test]
fn verify_confirms_with_exit_zero() {
    let out = circstab(&[
        "verify",
        "--theorem",
        "val3",
        "--n-max",
        "14",
        "--jobs",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["status"], "confirmed");
    assert_eq!(value["discrepancies"], serde_json::json!([]));
}

#[test]
fn verify_rejects_unknown_theorem_with_exit_2() {
    let out = circstab(&["verify", "--theorem", "nonsense", "--n-max", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn certify_dumps_witnesses() {
    let out = circstab(&["certify", "--set", "Z8:{1,3,4}"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("unstable (nontrivially)"));
    assert!(text.contains("C3(H={0,2,4,6}, R={4}, d=4)"));
    assert!(text.contains("V5.2"));
    assert!(text.contains("edge orbits of Aut BX: 2"));
}

#[test]
fn analyze_is_deterministic_across_runs() {
    let a = circstab(&["analyze", "--n", "24", "--set", "2,3,8,9,10"]);
    let b = circstab(&["analyze", "--n", "24", "--set", "2,3,8,9,10"]);
    assert_eq!(stdout(&a), stdout(&b));
    let value: serde_json::Value = serde_json::from_str(stdout(&a).trim()).unwrap();
    assert_eq!(value["wilson"], serde_json::json!([]));
    assert_eq!(value["stable"], false);
}
