#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn netcover(args: &[&str]) -> Output {
    netcover_env(args, &[])
}

pub fn netcover_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_netcover"));
    cmd.args(args).env_remove("RUST_LOG").env_remove("NETCOVER_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

/// Invocations covered by the golden files: (golden name, arguments).
/// Fixture names are resolved against the fixtures directory.
pub const GOLDEN_CASES: &[(&str, &[&str])] = &[
    ("stats_md", &["stats", "@pa60.json"]),
    ("stats_csv", &["stats", "@pa60.json", "--format", "csv"]),
    ("stats_json", &["stats", "@pa60.json", "--format", "json"]),
    ("select_greedy_md", &["select", "@pa60.json", "--method", "greedy", "--target", "0.8"]),
    ("select_greedy_json", &["select", "@er40.csv", "--method", "greedy", "--target", "0.8", "--format", "json"]),
    ("select_betweenness_csv", &["select", "@er40.csv", "--method", "betweenness", "--k", "5", "--format", "csv"]),
    ("select_closeness_target_csv", &["select", "@er40.csv", "--method", "closeness", "--target", "0.5", "--format", "csv"]),
    ("select_eigenvector_json", &["select", "@er40.csv", "--method", "eigenvector", "--k", "4", "--format", "json"]),
    ("evaluate_md", &["evaluate", "@pa60.json"]),
    ("evaluate_csv", &["evaluate", "@er40.csv", "--format", "csv"]),
    ("evaluate_json", &["evaluate", "@two_hub.json", "--ks", "1,2,3", "--format", "json"]),
    ("correlate_md", &["correlate", "@er40.csv"]),
    ("correlate_csv", &["correlate", "@pa60.json", "--format", "csv"]),
    ("correlate_json", &["correlate", "@er40.csv", "--format", "json"]),
    ("pareto_md", &["pareto", "@er40.csv"]),
    ("pareto_csv", &["pareto", "@pa60.json", "--format", "csv"]),
    ("pareto_json", &["pareto", "@er40.csv", "--method", "greedy", "--threshold", "0.9", "--format", "json"]),
    ("gen_pa_json", &["gen", "--model", "pa", "--n", "30", "--epn", "2", "--seed", "7"]),
    ("gen_er_csv", &["gen", "--model", "er", "--n", "20", "--p", "0.1", "--seed", "1", "--format", "csv"]),
];

pub fn resolve(args: &[&str]) -> Vec<String> {
    args.iter()
        .map(|a| match a.strip_prefix('@') {
            Some(name) => fixture(name).to_string_lossy().into_owned(),
            None => a.to_string(),
        })
        .collect()
}

/// Runs a golden case and returns its stdout, requiring exit code 0.
pub fn run_case(args: &[&str], env: &[(&str, &str)]) -> String {
    let args = resolve(args);
    let argv: Vec<&str> = args.iter().map(String::as_str).collect();
    let out = netcover_env(&argv, env);
    assert!(out.status.success(), "{argv:?} failed: {}", stderr(&out));
    stdout(&out)
}

/// Compares against the checked-in golden file; `UPDATE_GOLDEN=1` rewrites it.
/// Returns a description of the mismatch, if any.
pub fn check_golden(name: &str, actual: &str) -> Result<(), String> {
    let path = golden_dir().join(format!("{name}.txt"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).expect("write golden");
        return Ok(());
    }
    let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected == actual {
        Ok(())
    } else {
        Err(format!("{name}: output differs from {}", path.display()))
    }
}
