use std::fs;
use std::process::{Command, Output};

use glc_core::graph::{deserialize, is_isomorphic};
use glc_core::term::{encode, parse, FanoutPolicy};

fn glc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn demo_skk() {
    let o = glc(&["demo", "--name", "skk"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("beta=5 prune_local=1 result=I OK"));
}

#[test]
fn demo_all_passes() {
    let o = glc(&["demo", "--all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    for name in ["skk", "succ", "omega", "reidemeister2", "planar-beta", "plus"] {
        assert!(out.lines().any(|l| l.starts_with(name)), "{name} missing");
    }
    assert!(!out.contains("FAIL"));
}

#[test]
fn demo_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.toml");
    fs::write(
        &m,
        "[[demo]]\nname = \"skk\"\nclaim = \"wrong\"\nresult = \"I\"\nexpect = { beta = 4 }\n",
    )
    .unwrap();
    let o = glc(&["demo", "--all", "--manifest", m.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
    assert_eq!(glc(&["demo", "--name", "nope"]).status.code(), Some(2));
}

#[test]
fn reduce_identity_application() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.txt");
    let o = glc(&["reduce", "(\\x.x) (\\y.y)", "--budget", "5", "--trace", trace.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let g = deserialize(&stdout(&o)).unwrap();
    let want = encode(&parse("\\y. y").unwrap(), FanoutPolicy::default());
    assert!(is_isomorphic(&g, &want));
    let t = fs::read_to_string(trace).unwrap();
    assert_eq!(t.lines().count(), 1);
    assert!(t.starts_with("step 1 beta forward"));
}

#[test]
fn reduce_from_file_with_move_list() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("g.txt");
    let out = dir.path().join("out.txt");
    let o = glc(&["encode", "(\\x.\\y.x) (\\a.a) (\\b.b)", "-o", src.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = glc(&[
        "reduce",
        src.to_str().unwrap(),
        "--moves",
        "beta,prune",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let g = deserialize(&fs::read_to_string(out).unwrap()).unwrap();
    assert!(is_isomorphic(&g, &encode(&parse("\\a.a").unwrap(), FanoutPolicy::default())));
    assert_eq!(glc(&["reduce", "\\x.x", "--moves", "warp"]).status.code(), Some(2));
}

#[test]
fn deterministic_output() {
    let args = ["reduce", "(\\x. x x) (\\x. x x)", "--budget", "7"];
    assert_eq!(glc(&args).stdout, glc(&args).stdout);
    let args = ["show", "\\x.\\y.\\z. x z (y z)"];
    assert_eq!(glc(&args).stdout, glc(&args).stdout);
}

#[test]
fn check_reports_predicates() {
    let o = glc(&["check", "\\x. x", "--lambda-graph", "--planar"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("lambda-graph: yes"));
    // With the fixed rotation convention S has genus 1.
    let o = glc(&["check", "\\x.\\y.\\z. x z (y z)", "--planar"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("planar-disk: no (genus 1"));
    let o = glc(&["check", "\\x.\\y.\\z. x z (y z)", "--lambda-graph"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn encode_options() {
    let right = stdout(&glc(&["encode", "\\x. x x x"]));
    let left = stdout(&glc(&["encode", "\\x. x x x", "--fanout", "left"]));
    assert_ne!(right, left);
    assert_eq!(glc(&["encode", "a @{e} b"]).status.code(), Some(2));
    let o = glc(&["encode", "a @{e} b", "--lambda-scale"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dil"));
    assert_eq!(glc(&["encode", "\\x."]).status.code(), Some(2));
}

#[test]
fn show_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let o = glc(&["show", "\\x. x", "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(fs::read_to_string(dot).unwrap().starts_with("digraph"));
}

#[test]
fn step_lists_and_applies() {
    let o = glc(&["step", "(\\x.x) y", "--list", "beta"]);
    assert_eq!(stdout(&o).lines().count(), 1);
    assert!(stdout(&o).starts_with("0 beta forward"));
    let o = glc(&["step", "(\\x.x) y", "--apply", "beta:0"]);
    assert_eq!(o.status.code(), Some(0));
    let g = deserialize(&stdout(&o)).unwrap();
    assert!(is_isomorphic(&g, &encode(&parse("y").unwrap(), FanoutPolicy::default())));
    assert_eq!(glc(&["step", "(\\x.x) y", "--apply", "beta:3"]).status.code(), Some(2));
    let o = glc(&["step", "(\\x.x) y", "--apply", "beta:0", "--reverse"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(glc(&["step", "\\x.x"]).status.code(), Some(2));
}
