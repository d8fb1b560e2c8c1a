use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superanalysis")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

const COMPLEX: &str = "p 1\nq 0\ngamma 0 0 0 1\ngamma 0 1 1 1\ngamma 1 0 1 1\ngamma 1 1 0 -1\n";
const CUBIC: &str = "coef (3) 1 0\ncoef (1) 2 0\n";

#[test]
fn verify_complex_passes() {
    let out = run(&["algebra", "verify", "--builtin", "complex", "--a0-default"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["a0"]["residuals"][0], 0.0);
}

#[test]
fn verify_hyperbolic_fails() {
    let out = run(&["algebra", "verify", "--builtin", "hyperbolic", "--a0-default"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["a0"]["residuals"][0], 2.0);
}

#[test]
fn verify_slices_and_float_mode() {
    let out = run(&["algebra", "verify", "--builtin", "complex_grassmann:2", "--a1-default", "--numeric", "float"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["a1"]["pass"], true);
}

#[test]
fn algebra_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("complex.alg");
    fs::write(&good, COMPLEX).unwrap();
    let basis = dir.path().join("basis.txt");
    fs::write(&basis, "vector 1 0\nvector 0 1\n").unwrap();
    let out = run(&["algebra", "verify", "--algebra", good.to_str().unwrap(), "--a0", basis.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let bad = dir.path().join("bad.alg");
    fs::write(&bad, "p 1\nq 0\ngamma 0 0 5 1\n").unwrap();
    let out = run(&["algebra", "verify", "--algebra", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let missing = run(&["algebra", "verify", "--algebra", "/nonexistent/file"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn find_i_and_complexify() {
    let out = run(&["algebra", "find-i", "--builtin", "complex_grassmann:2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["residual"].as_f64().unwrap() < 1e-12);

    let out = run(&["algebra", "find-i", "--builtin", "hyperbolic"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["found"], false);

    let out = run(&["algebra", "complexify", "--builtin", "complex_grassmann:1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["complex_dim"], 2);
}

#[test]
fn kernel_sample_rows() {
    let out = run(&["kernel", "sample", "--builtin", "complex_grassmann:1", "--n", "1", "--m", "1", "--points", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    assert_eq!(v["rows"][0]["coefficients"].as_array().unwrap().len(), 4);
}

#[test]
fn reproduce_cubic() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("cubic.poly");
    fs::write(&f, CUBIC).unwrap();
    let f = f.to_str().unwrap();
    let out = run(&[
        "reproduce", "--builtin", "complex", "--n", "1", "--f", f, "--center", "0.3,0.2", "--radius", "1.5", "--at", "-0.5,0.4",
        "--method", "circle_trapezoid", "--samples", "4096",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(json(&out)["abs_error"].as_f64().unwrap() < 1e-10);

    let mc = ["reproduce", "--builtin", "complex", "--n", "1", "--f", f, "--samples", "20000", "--at", "0.1,-0.2"];
    let a = run(&mc);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, run(&mc).stdout);

    let outside = run(&["reproduce", "--builtin", "complex", "--n", "1", "--f", f, "--at", "3,0"]);
    assert_eq!(outside.status.code(), Some(2));
}

#[test]
fn series_commands() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("p.poly");
    fs::write(&f, "coef (1) (1) 1 0 0 0\ncoef (0) (2) 0 1 0 0\n").unwrap();
    let f = f.to_str().unwrap();
    let base = ["--builtin", "complex_grassmann:1", "--n", "1", "--m", "1", "--f", f];
    let out = run(&[&["series", "expand"][..], &base].concat());
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).lines().all(|l| l.starts_with("term (")));

    let out = run(&[&["series", "roundtrip", "--center", "1/2,0,0,0"][..], &base].concat());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pass"], true);
}

#[test]
fn suite_single_criterion() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("suite.csv");
    let out = run(&["suite", "--only", "kernel-closedness", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# "));
    assert_eq!(lines[1], "schema_version,id,name,expected,observed,tolerance,pass");
    assert_eq!(lines.len(), 3);
    assert!(lines[2].starts_with("1,7,kernel-closedness,") && lines[2].ends_with(",true"));

    let again = run(&["suite", "--only", "7"]);
    let body = |s: &str| s.lines().skip(1).map(str::to_owned).collect::<Vec<_>>();
    assert_eq!(body(&String::from_utf8_lossy(&again.stdout)), body(&text));
}

#[test]
fn suite_unknown_criterion() {
    let out = run(&["suite", "--only", "no-such-check"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no-such-check"));
}
