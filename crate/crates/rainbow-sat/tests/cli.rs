//! Black-box tests of the binary: exit codes, output formats, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use rainbow_sat::ColoredGraph;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rainbow-sat"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn rainbow-sat")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rainbow-sat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn construct_verify_round_trip() {
    let path = tmp("gamma.txt");
    let out = run(&[
        "construct",
        "rotated-even",
        "--n",
        "16",
        "--r",
        "4",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = String::from_utf8(out.stdout).unwrap();
    assert!(report.contains("edges=48"), "{report}");
    // sidecar exists and names the construction
    let meta = std::fs::read_to_string(tmp("gamma.txt.meta")).unwrap();
    assert!(meta.contains("construction=rotated-even"));
    assert!(meta.contains("edges=48"));

    let verify = run(&["verify", path.to_str().unwrap(), "--pattern", "rotated_K4"]);
    assert!(verify.status.success());
    assert!(String::from_utf8_lossy(&verify.stdout).contains("verdict=saturated"));

    // mutate: drop one edge, verdict flips with exit code 1
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    lines.remove(1);
    let mutated = tmp("gamma-mutated.txt");
    std::fs::write(&mutated, format!("{}\n", lines.join("\n"))).unwrap();
    let verify = run(&["verify", mutated.to_str().unwrap(), "--pattern", "rotated_K4"]);
    assert_eq!(verify.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&verify.stdout);
    assert!(stdout.contains("verdict=not-saturated"));
    assert!(stdout.contains("unsaturated "), "{stdout}");
}

#[test]
fn construct_fallback_to_stdout() {
    let out = run(&["construct", "acyclic-edge", "--n", "3", "--pattern", "P4"]);
    assert!(out.status.success());
    let g = ColoredGraph::from_text(&String::from_utf8(out.stdout).unwrap()).unwrap();
    // monochromatic K_3 fallback
    assert_eq!((g.n(), g.edge_count()), (3, 3));
}

#[test]
fn construct_is_deterministic() {
    let args = [
        "construct",
        "triangle-edge",
        "--n",
        "40",
        "--pattern",
        "K3",
        "--seed",
        "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn dot_format() {
    let out = run(&[
        "construct",
        "rotated-even",
        "--n",
        "16",
        "--r",
        "4",
        "--format",
        "dot",
    ]);
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("graph G {"));
    assert!(dot.contains("--"));
}

#[test]
fn classify_output() {
    let out = run(&["classify", "--pattern", "K4", "--t", "6"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("n log n"), "{stdout}");

    let out = run(&["classify", "--pattern", "S3", "--t", "3"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("n²"));

    let out = run(&["classify", "--pattern", "rotated_K5", "--t", "10"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("unresolved"));

    // palette too small is a usage error
    let out = run(&["classify", "--pattern", "K4", "--t", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exact_sat_and_gate() {
    let witness = tmp("witness.txt");
    let out = run(&[
        "exact-sat",
        "--n",
        "3",
        "--t",
        "3",
        "--pattern",
        "K3",
        "-o",
        witness.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("exact_sat=3"));
    let g = ColoredGraph::from_text(&std::fs::read_to_string(&witness).unwrap()).unwrap();
    assert_eq!(g.edge_count(), 3);

    let out = run(&["exact-sat", "--n", "10", "--t", "3", "--pattern", "K3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("force"));
}

#[test]
fn malformed_input_reports_line() {
    let bad = tmp("bad.txt");
    std::fs::write(&bad, "4 3\n0 1\n").unwrap();
    let out = run(&["verify", bad.to_str().unwrap(), "--pattern", "K3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn report_table() {
    let out = run(&[
        "report",
        "--pattern",
        "P4",
        "--n",
        "20",
        "--n",
        "30",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = stdout.lines().collect();
    assert_eq!(rows.len(), 3, "{stdout}");
    assert!(rows[1].contains("acyclic-edge") && rows[1].contains("true"));
    assert!(rows[2].contains("true"));
}

#[test]
fn pattern_from_file() {
    // a P4 given as a graph file instead of a family name
    let pat = tmp("p4.txt");
    std::fs::write(&pat, "4 3\n0 1 1\n1 2 2\n2 3 3\n").unwrap();
    let out = run(&[
        "construct",
        "acyclic-edge",
        "--n",
        "20",
        "--pattern",
        pat.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
