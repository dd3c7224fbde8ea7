use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn jnp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jnp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn emit(dir: &Path, name: &str, sets: &[&str], extra: &[&str]) -> PathBuf {
    let path = dir.join(format!("{name}-{}.json", sets.join("_")));
    let mut args = vec!["catalog", "emit", name];
    for s in sets {
        args.push("--set");
        args.push(s);
    }
    args.extend_from_slice(extra);
    args.push("-o");
    args.push(path.to_str().unwrap());
    let o = jnp(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn check_and_frobenius_on_j1() {
    let dir = tempfile::tempdir().unwrap();
    let j1 = emit(dir.path(), "2d-J1", &["k1=1", "k2=0"], &[]);
    assert_eq!(code(&jnp(&["check", p(&j1), "--law", "jnp"])), 0);
    assert_eq!(code(&jnp(&["check", p(&j1), "--law", "right-jnp"])), 2);
    let o = jnp(&["frobenius", p(&j1)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("no nondegenerate integral"));
    let o = jnp(&["--json", "frobenius", p(&j1)]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["answer"], "no");

    let j1b = emit(dir.path(), "2d-J1", &["k1=1", "k2=-2"], &[]);
    let o = jnp(&["--json", "frobenius", p(&j1b)]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["answer"], "yes");
    assert_eq!(v["pair"]["v"], serde_json::json!(["0", "1"]));
    assert_eq!(v["pair"]["omega"], serde_json::json!(["0", "2"]));
}

#[test]
fn emit_to_stdout_parses_back() {
    let o = jnp(&["catalog", "emit", "2d-J1", "--set", "k1=1", "--set", "k2=0"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 2);
    assert_eq!(v["circ_orientation"], "left");
}

#[test]
fn emit_then_check_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (name, sets) in [
        ("2d-J2", vec!["k1=2", "k2=-1"]),
        ("3d-J7", vec!["k1=1", "k2=0", "k3=2"]),
        ("conformal-3d", vec![]),
        ("final-jnp", vec![]),
    ] {
        let f = emit(dir.path(), name, &sets, &[]);
        assert_eq!(code(&jnp(&["check", p(&f), "--law", "jnp"])), 0, "{name}");
    }
    let f = emit(dir.path(), "char3-simple", &["k1=1", "k2=0", "k3=0", "a=0", "b=0"], &["--field", "p=3"]);
    assert_eq!(code(&jnp(&["check", p(&f), "--law", "jnp"])), 0);
    assert_eq!(code(&jnp(&["simple", p(&f)])), 0);
    let f = emit(dir.path(), "final-right-jnp", &[], &[]);
    assert_eq!(code(&jnp(&["check", p(&f), "--law", "right-jnp"])), 0);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a1 = emit(dir.path(), "2d-A1", &[], &[]);
    let args = ["--json", "search", "--base", p(&a1), "--field", "p=3"];
    let first = jnp(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, jnp(&args).stdout);
    let v: Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(v["count"], 27);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&jnp(&["frobnicate"])), 2);
    assert_eq!(code(&jnp(&["check", "/nonexistent.json", "--law", "jnp"])), 2);
    assert_eq!(code(&jnp(&["catalog", "emit", "no-such-entry"])), 2);
    let o = jnp(&["catalog", "emit", "char3-simple", "--set", "k1=0", "--field", "p=3"]);
    assert_eq!(code(&o), 2);
    assert_eq!(String::from_utf8_lossy(&o.stderr).lines().count(), 1);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"field": {"kind": "rational"}, "dim": 1, "unit": ["1"], "dot": [], "extra": 1}"#).unwrap();
    assert_eq!(code(&jnp(&["check", p(&bad), "--law", "jnp"])), 2);
}

#[test]
fn law_failure_exits_one_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("broken.json");
    std::fs::write(
        &f,
        r#"{"field": {"kind": "rational"}, "dim": 2, "unit": ["1", "0"],
            "dot": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"]],
            "circ": [[1, 1, 0, "1"]]}"#,
    )
    .unwrap();
    let o = jnp(&["--json", "check", p(&f), "--law", "jnp"]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], false);
    assert!(v["law"].as_str().unwrap().starts_with("jnp/"));
    assert!(v["counterexample"]["indices"].is_array());
}

#[test]
fn constructions_and_affinization() {
    let dir = tempfile::tempdir().unwrap();
    let j1 = emit(dir.path(), "2d-J1", &["k1=1", "k2=0"], &[]);
    let out = dir.path().join("comm.json");
    assert_eq!(code(&jnp(&["construct", "commutator", p(&j1), "-o", p(&out)])), 0);
    assert_eq!(code(&jnp(&["check", p(&out), "--law", "jacobi"])), 0);
    let kan = dir.path().join("kantor.json");
    assert_eq!(code(&jnp(&["construct", "kantor", p(&j1), "--u", "1,1", "-o", p(&kan)])), 0);
    assert_eq!(code(&jnp(&["check", p(&kan), "--law", "jnp"])), 0);
    let conf = dir.path().join("conf.json");
    assert_eq!(code(&jnp(&["construct", "conformal", p(&out), "--u", "2,-1", "-o", p(&conf)])), 0);
    assert_eq!(code(&jnp(&["check", p(&conf), "--law", "jacobi"])), 0);
    assert_eq!(code(&jnp(&["construct", "conformal", p(&out), "--u", "0,1"])), 2);
    let sq = dir.path().join("sq.json");
    assert_eq!(code(&jnp(&["construct", "tensor-jnp", p(&j1), p(&j1), "-o", p(&sq)])), 0);
    assert_eq!(code(&jnp(&["check", p(&sq), "--law", "jnp"])), 0);
    let rj = emit(dir.path(), "final-right-jnp", &[], &[]);
    let fj = emit(dir.path(), "final-jnp", &[], &[]);
    let tj = dir.path().join("tj.json");
    assert_eq!(code(&jnp(&["construct", "tensor-jacobi", p(&fj), p(&rj), "-o", p(&tj)])), 0);
    assert_eq!(code(&jnp(&["check", p(&tj), "--law", "jacobi"])), 0);

    let o = jnp(&["affinize", p(&j1), "--grid", "-2..2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("8 basis triples"));
    assert_eq!(code(&jnp(&["affinize", p(&j1), "--grid", "0..1"])), 2);
}

#[test]
fn derivation_constructions_read_maps() {
    let dir = tempfile::tempdir().unwrap();
    let poly = emit(dir.path(), "poly-derivation", &["N=3"], &["--field", "p=3"]);
    let out = dir.path().join("fd.json");
    let o = jnp(&["construct", "from-derivation", p(&poly), "-o", p(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(code(&jnp(&["check", p(&out), "--law", "jnp"])), 0);
    assert_eq!(code(&jnp(&["check", p(&poly), "--law", "derivation", "--map", "P"])), 0);
    let four = emit(dir.path(), "4d-diff-frobenius", &[], &[]);
    let tw = dir.path().join("tw.json");
    assert_eq!(code(&jnp(&["construct", "from-derivation", p(&four), "-o", p(&tw)])), 0);
    assert_eq!(code(&jnp(&["check", p(&four), "--law", "dot-frobenius"])), 0);
}

#[test]
fn modules_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let j1 = emit(dir.path(), "2d-J1", &["k1=1", "k2=0"], &[]);
    let adj = dir.path().join("adj.json");
    assert_eq!(code(&jnp(&["module", "adjoint", p(&j1), "-o", p(&adj)])), 0);
    assert_eq!(code(&jnp(&["module", "check", p(&j1), p(&adj)])), 0);
    let dual = dir.path().join("dual.json");
    assert_eq!(code(&jnp(&["module", "dual", p(&j1), p(&adj), "-o", p(&dual)])), 0);
    assert_eq!(code(&jnp(&["module", "check", p(&j1), p(&dual)])), 0);
}

#[test]
fn integrals_forms_and_listing() {
    let dir = tempfile::tempdir().unwrap();
    let j1 = emit(dir.path(), "2d-J1", &["k1=1", "k2=-2"], &[]);
    let v: Value = serde_json::from_str(&stdout(&jnp(&["--json", "integrals", p(&j1)]))).unwrap();
    assert_eq!(v["dim"], 1);
    let v: Value = serde_json::from_str(&stdout(&jnp(&["--json", "forms", p(&j1)]))).unwrap();
    assert_eq!(v["dim"], 1);
    let o = jnp(&["--json", "catalog", "list"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"3d-J23") && names.contains(&"char3-simple"));
    let plan = dir.path().join("plan.json");
    std::fs::write(&plan, r#"{"values": ["0", "1"], "entries": ["2d-J1", "2d-J3"]}"#).unwrap();
    let o = jnp(&["catalog", "verify", "--plan", p(&plan)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn version_flag() {
    let o = jnp(&["--version"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("format 1"));
}
