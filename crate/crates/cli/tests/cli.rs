use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const TIMES_TWO: &str = r#"{"format": "complex", "version": 1, "support": [-1, 0], "ranks": [1, 1],
  "differentials": [{"degree": -1, "matrix": [["2"]]}]}"#;

const NOT_A_COMPLEX: &str = r#"{"format": "complex", "version": 1, "support": [0, 2], "ranks": [1, 1, 1],
  "differentials": [{"degree": 0, "matrix": [["1"]]}, {"degree": 1, "matrix": [["1"]]}]}"#;

const IDENTITY_ON_C: &str = r#"{"format": "chain_map", "version": 1,
  "source": {"format": "complex", "version": 1, "support": [-1, 0], "ranks": [1, 1],
             "differentials": [{"degree": -1, "matrix": [["1"]]}]},
  "target": {"format": "complex", "version": 1, "support": [-1, 0], "ranks": [1, 1],
             "differentials": [{"degree": -1, "matrix": [["1"]]}]},
  "components": [{"degree": -1, "matrix": [["1"]]}, {"degree": 0, "matrix": [["1"]]}]}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_complicial"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn file(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn multiplication_by_two_has_cyclic_homology() {
    let dir = tempfile::tempdir().unwrap();
    let p = file(&dir, "x.json", TIMES_TWO);
    let o = run(&["homology", &p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("H^0 = Z/2"), "{}", stdout(&o));

    let o = run(&["--format", "machine", "homology", &p]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let h0 = &v["homology"][1];
    assert_eq!(h0["degree"], 0);
    assert_eq!(h0["group"]["torsion"][0], "2");
}

#[test]
fn standard_input_is_accepted() {
    let o = run_stdin(&["homology"], TIMES_TWO);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Z/2"));
    let o = run_stdin(&["validate", "-"], TIMES_TWO);
    assert_eq!(stdout(&o), "valid complex\n");
}

#[test]
fn non_complexes_are_rejected_with_a_diagnostic() {
    let o = run_stdin(&["validate"], NOT_A_COMPLEX);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("d^1 * d^0"), "{err}");
}

#[test]
fn syntax_errors_exit_with_usage_status() {
    let o = run_stdin(&["validate"], "{\"format\": ");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("line 1"));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["suite", "no-such-suite"]).status.code(), Some(2));
}

#[test]
fn machine_output_round_trips_byte_identically() {
    let dir = tempfile::tempdir().unwrap();
    let p = file(&dir, "x.json", TIMES_TWO);
    let out = dir.path().join("shifted.json");
    let o = run(&[
        "--format",
        "machine",
        "--out",
        out.to_str().unwrap(),
        "shift",
        "--by",
        "0",
        &p,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let first = std::fs::read_to_string(&out).unwrap();
    let o = run(&["--format", "machine", "shift", "--by", "0", out.to_str().unwrap()]);
    assert_eq!(stdout(&o), first);
}

#[test]
fn identity_of_contractible_complex() {
    let dir = tempfile::tempdir().unwrap();
    let f = file(&dir, "id.json", IDENTITY_ON_C);
    assert!(stdout(&run(&["qis", &f])).contains("quasi-isomorphism: yes"));
    assert!(stdout(&run(&["hoeq", &f])).contains("homotopy equivalence: yes"));
    assert!(stdout(&run(&["hoeq", &f, &f])).contains("homotopic: yes"));
    let o = run(&["idem-split", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verified: yes"));

    let o = run(&["--format", "machine", "cone", &f]);
    let cone = dir.path().join("cone.json");
    std::fs::write(&cone, &o.stdout).unwrap();
    let o = run(&["--format", "machine", "contractible", cone.to_str().unwrap()]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["contractible"], true);
    assert_eq!(v["euler_characteristic"], 0);
}

#[test]
fn constructions_run() {
    let dir = tempfile::tempdir().unwrap();
    let x = file(&dir, "x.json", TIMES_TWO);
    let f = file(&dir, "id.json", IDENTITY_ON_C);
    for args in [
        vec!["tensor", x.as_str(), x.as_str()],
        vec!["cyl", f.as_str()],
        vec!["truncate", "--k", "0", "--kind", "brutal-lt", x.as_str()],
        vec!["pushout", f.as_str(), f.as_str()],
    ] {
        let o = run(&args);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
    let o = run(&["--format", "machine", "truncate", "--k", "0", "--kind", "smart-ge", &x]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["complex"]["format"], "complex");
    assert_eq!(v["map"]["format"], "chain_map");
}

#[test]
fn snf_reports_invariant_factors() {
    let o = run_stdin(
        &["snf"],
        r#"{"format": "matrix", "version": 1, "rows": 2, "cols": 2, "entries": [["2", "4"], ["6", "8"]]}"#,
    );
    assert_eq!(stdout(&o), "rank 2\ninvariant factors: [2, 4]\n");
}

#[test]
fn passing_suites_exit_zero_and_are_deterministic() {
    let args = [
        "--format",
        "machine",
        "suite",
        "snf-oracle",
        "--seed",
        "7",
        "--count",
        "300",
    ];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    let b = run(&args);
    let verdicts = |o: &Output| {
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["pass"], true);
        v["checks"][0]["verdicts"].clone()
    };
    assert_eq!(verdicts(&a), verdicts(&b));
    let c = run(&[
        "--format",
        "machine",
        "suite",
        "snf-oracle",
        "--seed",
        "7",
        "--count",
        "300",
        "--sequential",
    ]);
    assert_eq!(verdicts(&a), verdicts(&c));
}

#[test]
fn suite_text_reports_and_listing() {
    let o = run(&["suite", "swindle", "--seed", "1", "--count", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS suite swindle"));
    let names = stdout(&run(&["suite", "--list"]));
    assert!(names.lines().any(|l| l == "axioms-qis"));
    assert!(names.lines().any(|l| l == "snf-oracle"));
}
