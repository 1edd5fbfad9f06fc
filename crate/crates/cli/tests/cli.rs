use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn quatgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quatgraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("millis");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

fn read_report(path: &Path) -> (String, Value) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    strip_timing(&mut v);
    (serde_json::to_string_pretty(&v).unwrap(), v)
}

#[test]
fn verify_reports_repeat_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.json");
    let second = dir.path().join("b.json");
    let a = quatgraph(&["verify", "--n", "2", "--seed", "42", "--json", first.to_str().unwrap()]);
    let b = quatgraph(&[
        "verify",
        "--n",
        "2",
        "--seed",
        "42",
        "--threads",
        "1",
        "--json",
        second.to_str().unwrap(),
    ]);
    // the clique claims fail at n = 2, and that must show in the exit status
    assert_eq!(a.status.code(), Some(1), "{}", stderr(&a));
    assert_eq!(b.status.code(), Some(1));
    let (text_a, report) = read_report(&first);
    let (text_b, _) = read_report(&second);
    assert_eq!(text_a, text_b);

    let claims = report["claims"].as_array().unwrap();
    let failing: Vec<&str> = claims
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["clique-family", "clique-chromatic"]);
    assert_eq!(report["summary"]["fail"], 2);
    assert!(stdout(&a).contains("clique-chromatic"));
}

#[test]
fn verify_single_suite_passes() {
    let out = quatgraph(&["verify", "--n", "3", "--suite", "snf"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("snf-decomposition") && text.contains("snf-all-ones"));
    assert!(!text.contains("clique"));
}

#[test]
fn dot_export_lists_every_vertex() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phi.dot");
    let out = quatgraph(&["export", "--n", "1", "--format", "dot", "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("graph phi_n1 {"));
    let nodes = text
        .lines()
        .filter(|l| l.trim_end().ends_with("\";") && !l.contains("--"))
        .count();
    let edges = text.lines().filter(|l| l.contains(" -- ")).count();
    assert_eq!(nodes, 14);
    assert_eq!(edges, 82);
}

#[test]
fn csv_export_has_header_and_every_edge() {
    let out = quatgraph(&["export", "--n", "2", "--format", "csv"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# n=2 vertices=253 edges=31309"));
    let rows = lines.filter(|l| !l.starts_with('#') && !l.is_empty()).count();
    // one column header plus one row per edge
    assert_eq!(rows, 31309 + 1);
}

#[test]
fn families_export_starts_with_header() {
    let out = quatgraph(&["export", "--n", "2", "--format", "families"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("family_tag,a1,a2,a3,a4\n"));
}

#[test]
fn large_modulus_needs_force() {
    let out = quatgraph(&["export", "--n", "9", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("modulus cap exceeded"), "{}", stderr(&out));
}

#[test]
fn neighbour_count_and_degree_agree() {
    let out = quatgraph(&["neighbors", "--n", "2", "--count-only", "1", "1", "1", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "237");

    let out = quatgraph(&["degree", "--n", "2", "1", "1", "1", "1"]);
    let text = stdout(&out);
    assert!(text.contains("invariant factors: 1 2 2 4"), "{text}");
    assert!(text.contains("degree:            237"), "{text}");

    let out = quatgraph(&["neighbors", "--n", "1", "1", "1", "1", "1"]);
    assert_eq!(stdout(&out).lines().count(), 7);
}

#[test]
fn negative_components_reduce() {
    let out = quatgraph(&["classify", "--n", "2", "--", "-1", "0", "0", "0"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).starts_with("3,0,0,0: unit"), "{}", stdout(&out));
}

#[test]
fn non_vertex_is_a_usage_error() {
    let out = quatgraph(&["neighbors", "--n", "2", "1", "0", "0", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not a vertex"));
    let out = quatgraph(&["degree", "--n", "2", "0", "0", "0", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn stats_checks_the_extremes() {
    let out = quatgraph(&["stats", "--n", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("min 7 (expected 7), max 13 (expected 13): ok"), "{text}");
}

#[test]
fn json_side_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("deg.json");
    let out = quatgraph(&[
        "degree",
        "--n",
        "3",
        "--json",
        path.to_str().unwrap(),
        "1",
        "1",
        "1",
        "1",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["degree"], 4077);
}
