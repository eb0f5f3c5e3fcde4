//! End-to-end tests of the command-line interface.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cliquepart"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn gen_is_deterministic_and_round_trips() {
    let a = run(&["gen", "random", "--n", "10", "--density", "0.5", "--seed", "7"]);
    let b = run(&["gen", "random", "--n", "10", "--density", "0.5", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "same flags and seed must be byte-identical");

    let c = run(&["gen", "random", "--n", "10", "--density", "0.5", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout, "different seed should change the instance");

    // Parse and re-serialize through solve: writing to a file then reading
    // back must preserve bytes.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.txt");
    let fileout = run(&[
        "gen", "random", "--n", "10", "--density", "0.5", "--seed", "7", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(fileout.status.success());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
}

#[test]
fn gen_tight_has_the_documented_shape() {
    let out = run(&["gen", "tight", "--ell", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let header = text.lines().next().unwrap();
    assert_eq!(header, "36 137");
}

#[test]
fn gen_rejects_bad_parameters() {
    let out = run(&["gen", "tight", "--ell", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["gen", "random", "--n", "5", "--density", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["gen", "unknown-family"]);
    assert_eq!(out.status.code(), Some(2));
}

fn write_instance(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    full.push("--out");
    full.push(&p);
    let out = bin().args(&full).output().expect("binary runs");
    assert!(out.status.success(), "gen failed: {:?}", out);
    p
}

#[test]
fn solve_reports_oracle_fields() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_instance(dir.path(), "seven.txt", &["gen", "seven-vertex"]);
    let out = run(&["solve", &path, "--alg", "greedy-edmonds", "--oracle"]);
    assert!(out.status.success());
    let record: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(record["schema"], "run-v1");
    assert_eq!(record["opt"], 5);
    assert_eq!(record["edges_kept"], 4);
    assert_eq!(record["edges_deleted"], 4);
    assert_eq!(record["bound"], "6/4");
    assert_eq!(record["satisfied"], true);
    assert_eq!(record["blocks"][0], serde_json::json!([1, 4, 5]));
}

#[test]
fn solve_smart_greedy_on_path_is_optimal() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_instance(dir.path(), "p4.txt", &["gen", "p4-path"]);
    let out = run(&["solve", &path, "--alg", "smart-greedy"]);
    let record: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(record["edges_kept"], 2);
    assert!(record.get("opt").is_none(), "no oracle without --oracle");
}

#[test]
fn solve_exact_on_complete_graph() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k4.txt");
    std::fs::write(&path, "4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n").unwrap();
    let out = run(&["solve", path.to_str().unwrap(), "--alg", "exact"]);
    let record: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(record["edges_kept"], 6);
    assert_eq!(record["edges_deleted"], 0);
}

#[test]
fn solve_accepts_permutation_instances() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_instance(dir.path(), "z.txt", &["gen", "zigzag", "--k", "3"]);
    let out = run(&["solve", &path, "--alg", "greedy", "--oracle"]);
    let record: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(record["n"], 6);
    assert_eq!(record["opt"], 6);
}

#[test]
fn solve_records_are_deterministic_apart_from_wall_time() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_instance(dir.path(), "r.txt", &[
        "gen", "random", "--n", "9", "--density", "0.6", "--seed", "3",
    ]);
    let mut records = Vec::new();
    for _ in 0..2 {
        let out = run(&["solve", &path, "--alg", "greedy", "--oracle"]);
        let mut v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
        v.as_object_mut().unwrap().remove("wall_ms");
        records.push(v);
    }
    assert_eq!(records[0], records[1]);
}

#[test]
fn solve_csv_mode() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_instance(dir.path(), "p4.txt", &["gen", "p4-path"]);
    let out = run(&["solve", &path, "--csv"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("instance,n,m,algorithm"));
    assert!(lines.next().unwrap().contains("greedy"));
}

#[test]
fn solve_rejects_malformed_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "3 1\n1 1\n").unwrap();
    let out = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["solve", "/nonexistent/file.txt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_suites_pass_at_small_scale() {
    let out = run(&["verify", "heuristics", "--k-max", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("[PASS]"));

    let out = run(&["verify", "ineq", "--ell-max", "20"]);
    assert!(out.status.success());

    let out = run(&["verify", "two-approx", "--count", "40", "--n-max", "8"]);
    assert!(out.status.success());

    let out = run(&["verify", "tight-family", "--ell", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("opt=24 greedy_edges=14"));
}

#[test]
fn verify_rejects_bad_parameters() {
    let out = run(&["verify", "ineq", "--ell-max", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_reports_timings() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_instance(dir.path(), "r.txt", &[
        "gen", "random", "--n", "12", "--density", "0.4", "--seed", "1",
    ]);
    let out = run(&["bench", &path, "--alg", "greedy-edmonds", "--repeat", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("repeats=2"));
    assert!(text.contains("min_ms="));
}
