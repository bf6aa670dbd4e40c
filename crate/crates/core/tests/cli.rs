use std::process::{Command, Output};

use colored_burau::braid::parse_word;
use colored_burau::colored_burau::cb_apply;
use colored_burau::CBElement;

fn cburau(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cburau")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn eval_json_parses_back() {
    let text = "s1^-1 s3 A[2,4] center^-1";
    let out = cburau(&["eval", "--n", "4", "--word", text, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let back: CBElement = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(back, cb_apply(&parse_word(text, 4).unwrap()));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(cburau(&["eval", "--n", "4"]).status.code(), Some(2));
    assert_eq!(cburau(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(cburau(&["eval", "--n", "4", "--word", "t1"]).status.code(), Some(2));
    let out = cburau(&["puregen", "--n", "4", "--i", "3", "--j", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn verification_commands_pass() {
    for args in [
        &["puregen", "--n", "6", "--i", "1", "--j", "6", "--check"][..],
        &["verify-lemma", "--n", "5", "--seed", "3"],
        &["eigen", "--n", "6"],
        &["center-det", "--n", "5", "--format", "json"],
        &["free-pair", "--n", "6", "--j", "4", "--jprime", "6", "--depth", "5", "--jobs", "2"],
        &["free-pair", "--n", "4", "--j", "2", "--jprime", "3", "--depth", "5"],
    ] {
        let out = cburau(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stdout(&out));
    }
}

#[test]
fn kernel_search_is_labeled_as_a_probe() {
    let out = cburau(&["kernel-search", "--n", "4", "--depth", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("none"));
    assert!(text.contains("does not decide faithfulness"));
}

#[test]
fn repeated_runs_are_identical() {
    let args = ["verify-lemma", "--n", "4", "--format", "json"];
    assert_eq!(cburau(&args).stdout, cburau(&args).stdout);
    let a = cburau(&["kernel-search", "--n", "4", "--depth", "3", "--jobs", "1", "--format", "json"]);
    let b = cburau(&["kernel-search", "--n", "4", "--depth", "3", "--jobs", "4", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}
