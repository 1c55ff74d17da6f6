use std::fs;
use std::path::Path;
use std::process::Command;

use gkm::cli::run;

fn gkm(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["gkm"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn generate_validate_and_rank() {
    let dir = tempfile::tempdir().unwrap();
    let s6 = path(dir.path(), "s6.json");
    assert_eq!(gkm(&["gen", "s6", "-o", &s6]).0, 0);

    let (code, out, _) = gkm(&["validate", &s6]);
    assert_eq!(code, 0);
    assert!(out.contains("axiom (4) effectiveness: pass"));
    assert!(out.ends_with("valid\n"));

    let (code, out, _) = gkm(&["rank", &s6, "--basis"]);
    assert_eq!(code, 0);
    assert!(out.contains("rank: 2"));
    assert!(out.contains("no effective torus of dimension > 2"));
    assert!(out.contains("f1: p=(1, 0, -1) q=(-1, 0, 1)"));

    let (_, full, _) = gkm(&["rank", &s6, "--method", "full"]);
    assert!(full.contains("rank: 2"));

    let (code, out, _) = gkm(&["invariant", &s6]);
    assert_eq!(code, 0);
    assert!(out.contains("e1: (-2, 1, 1)"));

    let (code, out, _) = gkm(&["connection", &s6]);
    assert_eq!(code, 0);
    assert!(out.contains("e1: e1 -> e1~, e2 -> e3~, e3 -> e2~"));
}

#[test]
fn several_files_in_order() {
    let dir = tempfile::tempdir().unwrap();
    let a = path(dir.path(), "a.json");
    let b = path(dir.path(), "b.json");
    gkm(&["gen", "grassmannian", "--n", "2", "-o", &a]);
    gkm(&["gen", "projective", "--m", "2", "-o", &b]);
    let (code, out, _) = gkm(&["rank", &a, &b]);
    assert_eq!(code, 0);
    let first = out.find("a.json").unwrap();
    let second = out.find("b.json").unwrap();
    assert!(first < second);
    assert!(out[first..second].contains("rank: 3"));
    assert!(out[second..].contains("rank: 2"));
}

#[test]
fn project_extend_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = path(dir.path(), "p3.json");
    let p32 = path(dir.path(), "p32.json");
    let p33 = path(dir.path(), "p33.json");
    gkm(&["gen", "projective", "--m", "3", "-o", &p3]);

    let (code, _, err) = gkm(&["project", &p3, "--matrix", "1,0,0;0,1,0", "-o", &p32]);
    assert_eq!(code, 1);
    assert!(err.contains("pairwise independence: FAIL"));

    assert_eq!(gkm(&["project", &p3, "--matrix", "1,0,1;0,1,1", "-o", &p32]).0, 0);
    let (code, out, _) = gkm(&["rank", &p32]);
    assert_eq!(code, 0);
    assert!(out.contains("type: (3, 2)"));
    assert!(out.contains("rank: 3"));

    assert_eq!(gkm(&["extend", &p32, "--target", "3", "-o", &p33]).0, 0);
    let (code, out, _) = gkm(&["check-extension", &p32, &p33]);
    assert_eq!(code, 0);
    assert!(out.starts_with("extension: yes"));

    let (code, out, _) = gkm(&["check-extension", &p32, &p3]);
    assert_eq!(code, 0);
    assert!(out.contains("(1, 0, 1)"));

    let (code, _, err) = gkm(&["extend", &p32, "--target", "4"]);
    assert_eq!(code, 1);
    assert!(err.contains("exceeds"));
}

#[test]
fn failures_and_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = path(dir.path(), "bad.json");
    fs::write(
        &bad,
        r#"{"torus_rank": 2, "vertices": ["p", "q", "r"], "edges": [
            {"id": "pq", "endpoints": ["p", "q"], "weight": [1, 0]},
            {"id": "qr", "endpoints": ["q", "r"], "weight": [1, 0]},
            {"id": "rp", "endpoints": ["r", "p"], "weight": [1, 0]}]}"#,
    )
    .unwrap();
    let (code, out, _) = gkm(&["validate", &bad]);
    assert_eq!(code, 1);
    assert!(out.contains("axiom (2) pairwise independence: FAIL"));
    assert!(out.contains("at vertex p"));
    assert!(out.ends_with("invalid\n"));

    let (code, _, err) = gkm(&["validate", &path(dir.path(), "missing.json")]);
    assert_eq!(code, 1);
    assert!(err.contains("missing.json"));

    let garbled = path(dir.path(), "garbled.json");
    fs::write(&garbled, "{\n \"torus_rank\": }").unwrap();
    let (code, _, err) = gkm(&["rank", &garbled]);
    assert_eq!(code, 1);
    assert!(err.contains("line 2"), "{err}");

    assert_eq!(gkm(&["frobnicate"]).0, 2);
    assert_eq!(gkm(&["rank"]).0, 2);
    assert_eq!(gkm(&["gen", "projective", "--m", "0"]).0, 2);
    let s6 = path(dir.path(), "s6.json");
    gkm(&["gen", "s6", "-o", &s6]);
    assert_eq!(gkm(&["project", &s6, "--matrix", "1,x"]).0, 2);
    assert_eq!(gkm(&["--help"]).0, 0);
}

#[test]
fn dot_output() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "g.json");
    gkm(&["gen", "grassmannian", "--n", "2", "-o", &g]);
    let (code, out, _) = gkm(&["dot", &g]);
    assert_eq!(code, 0);
    assert_eq!(out.matches(" -- ").count(), 12);
    let (_, again, _) = gkm(&["dot", &g]);
    assert_eq!(out, again);
    let (_, weights, _) = gkm(&["dot", &g, "--annotate", "weights"]);
    assert_eq!(weights.matches("label=").count(), 12);
}

#[test]
fn rational_span_flag() {
    let dir = tempfile::tempdir().unwrap();
    let f = path(dir.path(), "doubled.json");
    fs::write(
        &f,
        r#"{"torus_rank": 2, "vertices": ["p", "q"], "edges": [
            {"id": "e1", "endpoints": ["p", "q"], "weight": [2, 0]},
            {"id": "e2", "endpoints": ["p", "q"], "weight": [0, 2]},
            {"id": "e3", "endpoints": ["p", "q"], "weight": [-2, -2]}]}"#,
    )
    .unwrap();
    assert_eq!(gkm(&["validate", &f]).0, 1);
    assert_eq!(gkm(&["validate", "--rational-span", &f]).0, 0);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_gkm");
    let out = Command::new(bin).args(["gen", "s6"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"torus_rank\": 2"));
    let out = Command::new(bin).arg("nonsense").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
