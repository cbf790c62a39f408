//! End-to-end checks of the `sparsopt` binary: generate a problem file,
//! solve it, certify the limit, enumerate the catalog, and verify exit
//! codes.

use std::process::{Command, Output};

use serde_json::Value;

fn sparsopt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sparsopt"))
        .args(args)
        .output()
        .expect("failed to launch binary")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is not valid JSON")
}

#[test]
fn generate_solve_certify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let problem = dir.path().join("problem.json");
    let problem_arg = problem.to_str().unwrap();

    let out = sparsopt(&[
        "generate",
        "--kind",
        "least-squares",
        "--seed",
        "7",
        "--m",
        "6",
        "--n",
        "10",
        "--s",
        "3",
        "--out",
        problem_arg,
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let solved = stdout_json(&sparsopt(&["solve", "--problem", problem_arg, "--algo", "gss"]));
    let limit = solved["runs"][0]["limit"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| format!("{}", v.as_f64().unwrap()))
        .collect::<Vec<_>>()
        .join(",");
    let value = solved["runs"][0]["value"].as_f64().unwrap();
    assert!(value.is_finite());

    let cert = stdout_json(&sparsopt(&[
        "certify",
        "--problem",
        problem_arg,
        "--point",
        &limit,
    ]));
    assert!(cert["certificate"]["is_bf"].is_boolean());
    assert!(cert["certificate"]["is_cw_minimum"].is_boolean());
    let cert_value = cert["value"].as_f64().unwrap();
    assert!((cert_value - value).abs() <= 1e-9 * (1.0 + value.abs()));

    let catalog = stdout_json(&sparsopt(&["enumerate-bf", "--problem", problem_arg]));
    let entries = catalog["entries"].as_array().unwrap();
    // 10 choose 3 supports, minus any merged duplicates or singular skips.
    assert!(!entries.is_empty() && entries.len() <= 120);
}

#[test]
fn multistart_csv_has_one_row_per_run() {
    let dir = tempfile::tempdir().unwrap();
    let problem = dir.path().join("problem.json");
    let problem_arg = problem.to_str().unwrap();
    let out = sparsopt(&[
        "generate", "--seed", "3", "--m", "4", "--n", "6", "--s", "2", "--out", problem_arg,
    ]);
    assert!(out.status.success());

    let out = sparsopt(&[
        "multistart",
        "--problem",
        problem_arg,
        "--algo",
        "iht",
        "--starts",
        "12",
        "--seed",
        "5",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 13, "header plus 12 run rows:\n{text}");
    assert!(text.starts_with("run,"));
}

#[test]
fn fixtures_exit_code_reflects_known_failures() {
    // Two embedded trace checks are documented as unreproducible, so the
    // fixtures command reports them and exits nonzero.
    let out = sparsopt(&["fixtures"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL  sensing_trace_supports"));
    assert!(text.contains("fixture checks passed"));
}

#[test]
fn missing_problem_file_is_an_error() {
    let out = sparsopt(&["solve", "--problem", "/nonexistent/problem.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn bad_flags_exit_with_usage_error() {
    let out = sparsopt(&["solve"]);
    assert_eq!(out.status.code(), Some(2));
}
