use std::process::{Command, Output};

use serde_json::Value;

fn huaradon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_huaradon")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn lists_all_suites() {
    let out = huaradon(&["list-suites"]);
    assert_eq!(code(&out), 0);
    let names: Vec<String> = String::from_utf8(out.stdout).unwrap().lines().map(str::to_string).collect();
    assert_eq!(names.len(), 9);
    assert!(names.iter().any(|n| n == "dual-inversion"));
}

#[test]
fn passing_suite_writes_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = huaradon(&[
        "verify", "--suite", "sphere-lemmas", "--m", "3,4", "--max-degree", "3", "--format", "json", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let keys: Vec<&str> = report.as_object().unwrap().keys().map(String::as_str).collect();
    for key in ["suite", "config", "checks", "passed", "failed", "elapsed_ms"] {
        assert!(keys.contains(&key), "missing {key}");
    }
    assert_eq!(report["suite"], "sphere-lemmas");
    assert_eq!(report["failed"], 0);
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.len() > 30);
    assert_eq!(report["passed"].as_u64().unwrap() as usize, checks.len());
    let mut fields: Vec<&str> = checks[0].as_object().unwrap().keys().map(String::as_str).collect();
    fields.sort_unstable();
    assert_eq!(fields, ["lhs", "name", "params", "pass", "rhs"]);
}

#[test]
fn markdown_goes_to_stdout() {
    let out = huaradon(&["verify", "--suite", "m2-degeneracy", "--max-degree", "2", "--format", "markdown"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# m2-degeneracy"));
    assert!(text.contains("| check |"));
}

#[test]
fn printed_prefactor_fails_reproduction() {
    let out = huaradon(&["verify", "--suite", "kernel-reproduction", "--m", "3", "--max-degree", "1", "--use-printed-lambda"]);
    assert_eq!(code(&out), 1);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["failed"].as_u64().unwrap() > 0);
    let ok = huaradon(&["verify", "--suite", "kernel-reproduction", "--m", "3", "--max-degree", "1"]);
    assert_eq!(code(&ok), 0);
}

#[test]
fn config_errors_exit_two() {
    assert_eq!(code(&huaradon(&["verify", "--suite", "no-such-suite"])), 2);
    assert_eq!(code(&huaradon(&["verify", "--suite", "projections", "--m", "2"])), 2);
    assert_eq!(code(&huaradon(&["verify", "--suite", "projections", "--frame", "tilted"])), 2);
    assert_eq!(code(&huaradon(&["verify", "--suite", "projections", "--format", "yaml"])), 2);
    assert_eq!(code(&huaradon(&["verify", "--suite", "m2-degeneracy", "--out", "/nonexistent/dir/r.json"])), 2);
    assert_eq!(code(&huaradon(&["frobnicate"])), 2);
}

#[test]
fn empty_grid_succeeds() {
    let out = huaradon(&["verify", "--suite", "projections", "--m", ""]);
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["checks"].as_array().unwrap().len(), 0);
}

#[test]
fn worker_count_from_environment() {
    let run = |workers: &str| {
        Command::new(env!("CARGO_BIN_EXE_huaradon"))
            .args(["verify", "--suite", "clifford-axioms", "--m", "3"])
            .env("HUARADON_WORKERS", workers)
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert_eq!(code(&one), 0);
    let strip = |o: &Output| {
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v["elapsed_ms"] = Value::Null;
        v
    };
    assert_eq!(strip(&one), strip(&four));
    assert_eq!(code(&run("many")), 2);
}
