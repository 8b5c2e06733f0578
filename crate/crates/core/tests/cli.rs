use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_stratikit");

fn sample(name: &str) -> String {
    format!("{}/../../inputs/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(BIN).args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn non_open_decomposition_is_a_result_not_a_failure() {
    let o = run(&["decomp", "analyze", "--input", &sample("chain-bad.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["results"]["pi_open"], false);
    assert_eq!(v["results"]["tamaki_agrees"], false);
    assert!(!v["checks"].as_array().unwrap().is_empty());
}

#[test]
fn malformed_input_names_the_schema_path() {
    let o = run(&["arrangement", "faces", "--input", &sample("bad-forms.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["schema_path"], "forms[1][1]");

    let o = run_stdin(&["topology", "check"], "{\"carrier\": [\"a\"], \"opens\": [[], [\"a\"]], \"extra\": 1}");
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["schema_path"], "extra");

    let o = run_stdin(&["topology", "check"], "{\"carrier\": [\"a\", \"b\"], \"opens\": [[], [\"a\"], [\"c\"]]}");
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["schema_path"], "opens");

    let o = run_stdin(&["topology", "check"], "{not json");
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["schema_path"], "$");

    let o = run_stdin(&["homset", "preorder", "--source", "A", "--target", "Z"], include_str!("../../../inputs/idempotent.json"));
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["schema_path"], "--target");
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["arrangement", "poset", "--input", &sample("three-lines.json")];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["decomp", "suite", "--seed", "7", "--cases", "50"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn grid_poset_dot_export() {
    let dir = std::env::temp_dir().join(format!("stratikit-dot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let covering = dir.join("cover.dot");
    let full = dir.join("full.dot");
    let input = sample("coord2.json");
    assert_eq!(run(&["arrangement", "poset", "--input", &input, "--dot", covering.to_str().unwrap()]).status.code(), Some(0));
    let args = ["arrangement", "poset", "--input", &input, "--full-relation", "--dot", full.to_str().unwrap()];
    assert_eq!(run(&args).status.code(), Some(0));
    let arrows = |p: &std::path::Path| std::fs::read_to_string(p).unwrap().matches("->").count();
    assert_eq!(arrows(&covering), 12);
    assert_eq!(arrows(&full), 16);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn dual_reads_closed_sets_as_opens() {
    let o = run(&["topology", "to-preorder", "--dual", "--input", &sample("sign-poset.json")]);
    let v = json(&o);
    assert_eq!(v["results"]["pairs"], serde_json::json!([["N", "O"], ["P", "O"]]));
}

#[test]
fn corpus_runs_clean() {
    let o = run(&["corpus", "run-all"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let o = run(&["corpus", "run", "ex1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(run(&["corpus", "run", "no-such-case"]).status.code(), Some(2));
    let list = json(&run(&["corpus", "list"]));
    assert_eq!(list["results"].as_array().unwrap().len(), 11);
}

#[test]
fn homology_and_yoneda_commands() {
    let v = json(&run(&["homology", "betti", "--input", &sample("pseudo-circle.json")]));
    assert_eq!(v["results"]["betti"], serde_json::json!([1, 1]));
    let o = run(&[
        "homset",
        "yoneda",
        "--anchor",
        "A",
        "--functor",
        &sample("idempotent-functor.json"),
        "--input",
        &sample("idempotent.json"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["results"]["natural_transformations"]["transformations"].as_array().unwrap().len(), 2);
}
