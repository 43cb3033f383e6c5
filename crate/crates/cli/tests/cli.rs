use std::process::{Command, Output};

use serde_json::Value;

fn superell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superell"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn analyze_json(args: &[&str]) -> Value {
    let mut full = vec!["analyze"];
    full.extend_from_slice(args);
    let o = superell(&full);
    assert_eq!(code(&o), 0, "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn cyclotomic_pair_is_unconditional() {
    let v = analyze_json(&["--ell", "3", "--base", "cyclo", "--f", "x^5-x-1", "--h", "x^5-1"]);
    assert_eq!(v["verdict"]["theorem"], "ENDO_H");
    assert_eq!(v["verdict"]["conclusion"], "UNCONDITIONAL_NOT_ISOGENOUS");
    assert_eq!(v["verdict"]["r"], 5);
    assert_eq!(v["verdict"]["dim_bound"], 8);
    assert_eq!(v["problem"]["mode"], "PAIR");
}

#[test]
fn strict_flag_keeps_it_conditional() {
    let v = analyze_json(&["--ell", "3", "--base", "cyclo", "--f", "x^5-x-1", "--h", "x^5-1", "--strict"]);
    assert_eq!(v["verdict"]["conclusion"], "CONDITIONAL");
}

#[test]
fn ell_dividing_degree_exits_one() {
    let o = superell(&["analyze", "--ell", "3", "--f", "x^9-x-1", "--h", "x^9-1"]);
    assert_eq!(code(&o), 1);
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("divides"));
}

#[test]
fn non_prime_ell_exits_one() {
    let o = superell(&["analyze", "--ell", "9", "--f", "x^5-x-1", "--h", "x^5-1"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn malformed_polynomial_exits_two() {
    let o = superell(&["analyze", "--ell", "3", "--f", "x^5--1", "--h", "x^5-1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
}

#[test]
fn abstract_mode() {
    let v = analyze_json(&["--ell", "5", "--f", "x^9-2", "--abstract-y"]);
    assert_eq!(v["problem"]["mode"], "ABSTRACT");
    assert_eq!(v["verdict"]["theorem"], "ISOG_ELL");
    assert_eq!(v["verdict"]["r"], 3);
}

#[test]
fn output_is_deterministic_apart_from_timing() {
    let args = ["--ell", "3", "--f", "x^5-x-1", "--h", "x^5-2"];
    let mut a = analyze_json(&args);
    let mut b = analyze_json(&args);
    assert!(a["timing_ms"].is_u64());
    a.as_object_mut().unwrap().remove("timing_ms");
    b.as_object_mut().unwrap().remove("timing_ms");
    assert_eq!(a, b);
}

#[test]
fn text_format_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let o = superell(&[
        "analyze", "--ell", "3", "--f", "x^5-x-1", "--h", "x^5-1", "--format", "text", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("theorem: EndoH"));
    assert!(text.contains("f = x^5 - x - 1"));
}

fn corpus_file(body: &str) -> (tempfile::TempDir, String) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.corpus");
    std::fs::write(&path, body).unwrap();
    let s = path.to_str().unwrap().to_string();
    (dir, s)
}

const ENTRY: &str = "name = quintic\nell = 3\nbase = cyclo\nf = x^5-x-1\nh = x^5-1\n\
expect_theorem = ENDO_H\nexpect_conclusion = UNCONDITIONAL_NOT_ISOGENOUS\n";

#[test]
fn corpus_matching_and_mismatching() {
    let (_d, good) = corpus_file(&format!("{ENTRY}expect_r = 5\nexpect_bound = 8\n"));
    let o = superell(&["corpus", &good]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));

    let (_d2, bad) = corpus_file(&format!("{ENTRY}expect_r = 7\nexpect_bound = 8\n"));
    let o = superell(&["corpus", &bad]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("r: expected 7, got 5"));
}

#[test]
fn corpus_edge_cases() {
    let (_d, empty) = corpus_file("# nothing here\n\n");
    assert_eq!(code(&superell(&["corpus", &empty])), 0);

    let (_d2, broken) = corpus_file("name = a\nell three\n");
    let o = superell(&["corpus", &broken]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 2"));

    assert_eq!(code(&superell(&["corpus", "/nonexistent/file.corpus"])), 2);
}

#[test]
fn shipped_corpus_passes_in_both_modes() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus/examples.corpus");
    assert_eq!(code(&superell(&["corpus", path])), 0);
    assert_eq!(code(&superell(&["--sequential", "corpus", path])), 0);
}

#[test]
fn lab_suites() {
    for suite in ["orbits", "qln", "cyclo"] {
        let o = superell(&["lab", suite]);
        assert_eq!(code(&o), 0, "{suite}");
        assert!(String::from_utf8_lossy(&o.stdout).starts_with("PASS"));
    }
    assert_eq!(code(&superell(&["lab", "nonsense"])), 2);
}

#[test]
fn thread_override_is_accepted() {
    let o = Command::new(env!("CARGO_BIN_EXE_superell"))
        .args(["lab", "heart"])
        .env("SUPERELL_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
}
