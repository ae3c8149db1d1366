//! Exit-code and format contracts not already frozen by the acceptance run.

use std::process::{Command, Output};

fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dowling"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("spawn dowling")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["table", "--m", "0", "--r", "1", "--max-n", "2"][..],
        &["series", "--kind", "ogf-2f1", "--m", "2", "--r", "1", "--x", "1", "--y", "2"],
        &["verify", "--grid", "/nonexistent-grid.cfg"],
        &["oracle", "--n", "10", "--k", "3", "--r", "3"],
        &["eval", "--m", "2", "--r", "1", "--n", "2", "--x", "abc", "--y", "1"],
    ] {
        let out = run(args, &[]);
        assert_eq!(code(&out), 2, "args {args:?} should exit 2");
        assert!(out.stdout.is_empty(), "errors go to stderr, args {args:?}");
        assert!(!out.stderr.is_empty(), "missing diagnostic, args {args:?}");
    }
}

#[test]
fn table_json_is_jsonl() {
    let out = run(&["table", "--m", "2", "--r", "1", "--max-n", "1", "--format", "json"], &[]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let values: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is a JSON object"))
        .collect();
    assert_eq!(values.len(), 3);
    assert_eq!(values[2]["n"], 1);
    assert_eq!(values[2]["k"], 1);
    assert_eq!(values[2]["value"], "1");
}

#[test]
fn output_flag_writes_file() {
    let path = std::env::temp_dir().join("dowling-eval-out.txt");
    let path_str = path.to_str().unwrap();
    let out = run(
        &["eval", "--m", "2", "--r", "1", "--n", "2", "--x", "2", "--y", "1", "--output", path_str],
        &[],
    );
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "11\n");
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_env_grid_and_only_filter() {
    let path = std::env::temp_dir().join("dowling-tiny-grid.cfg");
    std::fs::write(
        &path,
        "m-list=1\nr-list=0\nsum-budget=3\nx-max=2\ny-list=1\nseries-order=4\n",
    )
    .unwrap();
    let out = run(
        &["verify", "--only", "bell-sum,bell-rec", "--format", "json"],
        &[("DOWLING_GRID", path.to_str().unwrap())],
    );
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["all_pass"], true);
    assert_eq!(report["identities"].as_array().unwrap().len(), 2);
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_rejects_unknown_identity() {
    let out = run(&["verify", "--only", "no-such-identity"], &[]);
    assert_eq!(code(&out), 2);
}

#[test]
fn shipped_grid_matches_builtin_default() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../grid.cfg"))
        .unwrap();
    let parsed = dowling_core::identities::ParamGrid::parse(&text).unwrap();
    assert_eq!(parsed, dowling_core::identities::ParamGrid::default());
}
