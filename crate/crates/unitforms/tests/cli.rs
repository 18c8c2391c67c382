use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_unitforms"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn single_arrow_quiver() {
    let out = run(&["quiver", "--arrows", "1->2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["unit_form"]["tri_gram"], serde_json::json!([[1]]));
    assert_eq!(doc["incidence"], serde_json::json!([[1], [-1]]));
    assert_eq!(doc["tree"], Value::Bool(true));
}

#[test]
fn classify_tree_forms_from_files() {
    let a = scratch("path4.json", r#"{"vertices": 5, "arrows": [[1, 2], [2, 3], [3, 4], [4, 5]]}"#);
    let b = scratch("star4.txt", "2 -> 1\n3 -> 1\n1 -> 4\n5 -> 1\n");
    let out = run(&["classify", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json(&out);
    assert_eq!(doc["verdict"], "congruent");
    assert_eq!(doc["certificate"]["verified"], Value::Bool(true));
    assert_eq!(doc["certificate"]["b"].as_array().unwrap().len(), 4);
}

#[test]
fn classify_exit_codes() {
    let one = run(&["classify", "1->2,2->3,3->1", "1->2,2->3,3->1,1->3"]);
    assert_eq!(one.status.code(), Some(1));
    assert_eq!(json(&one)["verdict"], "not_congruent");

    // Two principal 1-stars with 4 + 1 arrows: d = 1 against d = 2.
    let apart = run(&["classify", "1->2,1->3,1->4,1->5,1->5", "1->2,1->3,1->4,1->5,1->4"]);
    assert_eq!(apart.status.code(), Some(1));

    let corank_two = run(&["classify", "1->2,1->2,1->2", "1->2,2->1,1->2"]);
    assert_eq!(corank_two.status.code(), Some(2));
    assert_eq!(json(&corank_two)["verdict"], "undecided");
}

#[test]
fn one_star_coxeter_polynomial() {
    let out = run(&["coxeter", "--one-star", "4,1,5"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    // (λ⁴ - 1)(λ - 1)
    assert_eq!(doc["charpoly"], serde_json::json!([1, -1, 0, 0, -1, 1]));
    assert_eq!(doc["agree"], Value::Bool(true));
    assert_eq!(doc["coxeter_number"], "infinite");
    assert_eq!(doc["cap_based"], Value::Bool(true));
}

#[test]
fn coxeter_number_of_a2() {
    let doc = json(&run(&["coxeter", "1->2,2->3"]));
    assert_eq!(doc["coxeter_number"], 3);
    assert_eq!(doc["routes_agree"], Value::Bool(true));
}

#[test]
fn inverse_routes_agree() {
    let doc = json(&run(&["inverse", "1->2,3->2,3->4"]));
    assert_eq!(doc["agree"], Value::Bool(true));
    assert_eq!(doc["triangular_identity"], Value::Bool(true));
}

#[test]
fn reduce_reports_verified_certificate() {
    let doc = json(&run(&["reduce", "1->2,2->3,3->4,4->1", "--canonical"]));
    assert_eq!(doc["verified"], Value::Bool(true));
    // Coxeter polynomial (λ - 1)(λ³ - 1), so d = 1.
    assert_eq!(doc["d"], 1);
    assert_eq!(doc["shape"], serde_json::json!({"ell": 3, "m": 4, "n": 3}));

    let star = json(&run(&["reduce", "1->2,2->3,3->4", "--center", "3"]));
    let arrows = star["output"]["arrows"].as_array().unwrap();
    assert!(arrows.iter().all(|a| a.as_array().unwrap().contains(&Value::from(3))));
}

#[test]
fn transform_log_replay() {
    // Arrows 1 and 2 share no vertex, so swapping them keeps Ǧ triangular.
    let log = r#"[{"op": "point_inversion", "arrows": [1]}, {"op": "swap", "i": 1, "j": 2}]"#;
    let doc = json(&run(&["transform", "1->2,3->4,2->3", "--log", log]));
    assert_eq!(doc["incidence_identity"], Value::Bool(true));
    assert_eq!(doc["strong"], Value::Bool(true));

    // Swapping adjacent arrows is only a weak congruence.
    let doc = json(&run(&["transform", "1->2,2->3", "--log", r#"[{"op": "swap", "i": 1, "j": 2}]"#]));
    assert_eq!((doc["strong"].clone(), doc["weak"].clone()), (Value::Bool(false), Value::Bool(true)));
}

#[test]
fn realize_rejects_type_d() {
    let d4 = r#"{"n": 4, "tri_gram": [[1, -1, -1, -1], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]}"#;
    let out = run(&["realize", d4]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("type A"));
}

#[test]
fn malformed_input_and_usage() {
    assert_eq!(run(&["form", "{\"n\": 2"]).status.code(), Some(3));
    assert_eq!(run(&["quiver", "--arrows", "0->1"]).status.code(), Some(3));
    assert_eq!(run(&["bogus"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn reads_standard_input() {
    let mut child = bin().args(["form", "-"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(br#"{"n": 2, "tri_gram": [[1, -1], [0, 1]]}"#).unwrap();
    let out = child.wait_with_output().unwrap();
    let doc = json(&out);
    assert_eq!(doc["corank"], 0);
    assert_eq!(doc["positive"], Value::Bool(true));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["reduce", "1->2,3->2,3->4,4->5,5->1", "--canonical"][..],
        &["classify", "1->2,2->3,3->4", "2->1,3->1,4->1"],
        &["sweep", "--samples", "30", "--max-arrows", "6", "--seed", "5"],
        &["--format", "pretty", "coxeter", "--one-star", "5,2,4"],
    ] {
        let first = run(args);
        let second = run(args);
        assert_eq!(first.status.code(), Some(0));
        assert_eq!(first.stdout, second.stdout);
    }
}

#[test]
fn sweep_output_ignores_job_count() {
    let one = run(&["sweep", "--samples", "40", "--seed", "9", "--jobs", "1"]);
    let four = run(&["sweep", "--samples", "40", "--seed", "9", "--jobs", "4"]);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(json(&one)["ok"], Value::Bool(true));
}

#[test]
fn pretty_output() {
    let out = run(&["--format", "pretty", "coxeter", "--one-star", "4,1,5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("charpoly: 1 - λ - λ^4 + λ^5"), "{text}");
}
