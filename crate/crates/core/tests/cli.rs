//! Exit codes and output files of the command-line tool.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewcensus")).args(args).env_remove("SKEWCENSUS_WORKERS").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn catalog_lists_types() {
    let o = run(&["catalog", "--p", "7", "--q", "3"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("9 ") && l.contains("3528")));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["census", "--p", "3", "--q", "5", "--type", "6"])), 2);
    assert_eq!(code(&run(&["census", "--p", "4", "--q", "3", "--type", "5"])), 2);
    assert_eq!(code(&run(&["census", "--p", "7", "--q", "3", "--type", "6", "--k", "2"])), 2);
    assert_eq!(code(&run(&["census", "--p", "3", "--q", "2", "--type", "5", "--workers", "0"])), 2);
    assert_eq!(code(&run(&["census", "--p", "3"])), 2);
}

#[test]
fn verify_passes_on_a_small_cell() {
    let o = run(&["verify", "--p", "5", "--q", "3", "--type", "10"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("PASS") && !text.contains("FAIL"));
}

#[test]
fn budget_exhaustion_exits_one() {
    let o = run(&["census", "--p", "3", "--q", "2", "--type", "7", "--budget-nodes", "3"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "incomplete");
    let o = run(&["verify", "--p", "3", "--q", "2", "--type", "7", "--budget-nodes", "3"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn output_files_in_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("c.json");
    let csv = dir.path().join("c.csv");
    let base = ["census", "--p", "3", "--q", "2", "--type", "6", "--output"];
    let mut a: Vec<&str> = base.to_vec();
    a.push(json.to_str().unwrap());
    assert_eq!(code(&run(&a)), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["totals"]["gamma_count"], 32);

    let mut a: Vec<&str> = base.to_vec();
    a.extend([csv.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(code(&run(&a)), 0);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().nth(2).unwrap().contains(",6,,24,"));
}

#[test]
fn enumerate_dump() {
    let o = run(&["enumerate", "--p", "3", "--q", "2", "--type", "5"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 46);
    assert_eq!(v["records"].as_array().unwrap().len(), 46);
    assert_eq!(v["records"][0]["gamma"].as_array().unwrap().len(), 18);
}

#[test]
fn worker_count_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_skewcensus"))
        .args(["census", "--p", "3", "--q", "2", "--type", "7"])
        .env("SKEWCENSUS_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let bad = Command::new(env!("CARGO_BIN_EXE_skewcensus"))
        .args(["census", "--p", "3", "--q", "2", "--type", "7"])
        .env("SKEWCENSUS_WORKERS", "lots")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2);
}
