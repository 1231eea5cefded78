use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_endoforge"));
    cmd.args(args).env_remove("ENDOFORGE_NODE_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, contents).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const Z3: &str = r#"{"size": 3, "identity": 0, "table": [[0,1,2],[1,2,0],[2,0,1]]}"#;

#[test]
fn z3_pipeline_reaches_degree_three_with_end_of_size_three() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "z3.json", Z3);
    let out = dir.path().join("g.json");
    let o = run(&["build", "pipeline", "--monoid", s(&m), "--out", s(&out), "--verify"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report = stdout_json(&o);
    let last = report["stages"].as_array().unwrap().last().unwrap().clone();
    assert_eq!(last["max_degree"], 3);
    assert_eq!(last["end"]["size"], 3);
    assert_eq!(last["end"]["isomorphic_to_target"], true);

    let e = run(&["endo", s(&out), "--count"]);
    assert_eq!(code(&e), 0);
    assert_eq!(stdout_json(&e)["count"], 3);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "z3.json", Z3);
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let ra = run(&["build", "pipeline", "--monoid", s(&m), "--out", s(&a), "--verify"]);
    let rb = run(&["build", "pipeline", "--monoid", s(&m), "--out", s(&b), "--verify"]);
    assert_eq!(code(&ra), 0);
    assert_eq!(ra.stdout, rb.stdout);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn sip_rejects_a_digraph_with_a_loop() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "loop.json", r#"{"vertices": ["a"], "colors": ["c"], "arcs": [{"color": 0, "from": 0, "to": 0}]}"#);
    let out = dir.path().join("g.json");
    let o = run(&["build", "sip", "--input", s(&d), "--out", s(&out)]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("δ⁺(D), δ⁻(D) ≥ 1"));
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "bad.json", r#"{"size": 2, "identity": 0, "table": [[0,1],[1,5]]}"#);
    // validate reports the verdict; every other command treats the table as bad input
    assert_eq!(code(&run(&["monoid", "validate", s(&m)])), 1);
    assert_eq!(code(&run(&["monoid", "predicates", s(&m)])), 2);
    assert_eq!(code(&run(&["monoid", "validate", "/nonexistent/file.json"])), 2);
    assert_eq!(code(&run(&["no-such-command"])), 2);
}

#[test]
fn node_budget_from_the_environment_is_enforced() {
    let o = run_env(&["verify", "encoding", "--lattice", "example"], &[("ENDOFORGE_NODE_BUDGET", "10")]);
    assert_eq!(code(&o), 1);
    let ok = run(&["verify", "encoding", "--lattice", "example"]);
    assert_eq!(code(&ok), 0);
    // the flag wins over the environment
    let o = run_env(
        &["verify", "encoding", "--lattice", "example", "--budget", "1000000"],
        &[("ENDOFORGE_NODE_BUDGET", "10")],
    );
    assert_eq!(code(&o), 0);
}

#[test]
fn verification_suites_pass() {
    for args in [
        &["verify", "gadget", "--k", "1"][..],
        &["verify", "bp-monoid", "--p", "2"],
        &["verify", "blowup", "--lattice", "chain:2"],
        &["verify", "minor", "--poset", "bn:2"],
    ] {
        let o = run(args);
        assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(stdout_json(&o)["passed"], true);
    }
}

#[test]
fn minor_witness_round_trips_through_the_checker() {
    let dir = TempDir::new().unwrap();
    let (model, host) = (dir.path().join("model.json"), dir.path().join("host.json"));
    let o = run(&["witness", "minor", "--poset", "bn:2", "--out", s(&model), "--host-out", s(&host)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let c = run(&["witness", "check", "--host", s(&host), "--model", s(&model)]);
    assert_eq!(code(&c), 0);

    // moving every branch set onto one vertex breaks the certificate
    let mut m: Value = serde_json::from_str(&fs::read_to_string(&model).unwrap()).unwrap();
    for set in m["branch_sets"].as_array_mut().unwrap() {
        *set = serde_json::json!([0]);
    }
    fs::write(&model, m.to_string()).unwrap();
    assert_eq!(code(&run(&["witness", "check", "--host", s(&host), "--model", s(&model)])), 1);
}

#[test]
fn trivial_monoid_needs_the_augmented_route() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "one.json", r#"{"size": 1, "identity": 0, "table": [[0]]}"#);
    let out = dir.path().join("g.json");
    assert_eq!(code(&run(&["build", "pipeline", "--monoid", s(&m), "--out", s(&out)])), 1);
    let o = run(&["build", "pipeline", "--monoid", s(&m), "--route", "augment", "--out", s(&out), "--verify"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout_json(&o)["stages"].as_array().unwrap().last().unwrap()["end"]["size"], 1);
}

#[test]
fn dot_export_writes_a_graph() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.json", r#"{"vertices": ["a", "b"], "edges": [[0, 1]]}"#);
    let o = run(&["export", "dot", s(&g)]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.starts_with("graph"), "{text}");
    assert!(text.contains("--"));
}
