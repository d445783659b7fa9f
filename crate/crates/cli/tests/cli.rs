use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_epdescent"))
        .args(args)
        .env_remove("EPDESCENT_CACHE")
        .env_remove("EPDESCENT_JOBS")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn descent_gauss_matches() {
    let out = run(&["descent", "--field", "gauss", "-p", "7"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["match"], true);
    assert_eq!(v["ledger"], 0);
}

#[test]
fn descent_mismatch_exits_one() {
    // Q(sqrt(-2)), p = 3: the computed ledger is 1, the table says 0
    let out = run(&["descent", "--field", "root2", "-p", "3"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["ledger"], 1);
    assert_eq!(v["match"], false);
}

#[test]
fn descent_csv() {
    let out = run(&["descent", "--field", "root7", "-p", "11", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("11,root7,"));
}

#[test]
fn bad_input_is_usage_error() {
    for args in [
        &["descent", "--field", "rootq", "-q", "15", "-p", "7"][..],
        &["descent", "--field", "gauss", "-q", "11", "-p", "7"],
        &["descent", "-p", "9"],
        &["descent", "-p", "7", "--depth-cap", "2"],
        &["lseries", "-p", "4"],
        &["lseries", "-p", "3", "--field", "root2"],
        &["reduce", "-p", "2"],
        &["props", "--cases", "5", "--suite", "nope"],
        &["verify-paper", "--criterion", "9"],
        &["frobnicate"],
    ] {
        assert_eq!(code(&run(args)), 64, "{args:?}");
    }
}

#[test]
fn ramified_p_is_rejected() {
    let out = run(&["descent", "--field", "root7", "-p", "7"]);
    assert_eq!(code(&out), 64);
    assert!(!out.stderr.is_empty());
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
}

fn sweep(cache: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["sweep", "--field", "gauss", "--from", "3", "--to", "80", "--cache", cache.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

#[test]
fn sweep_cache_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("nested/sweep.jsonl");

    let first = sweep(&cache, &["--jobs", "2"]);
    assert_eq!(code(&first), 0);
    let s = json(&first);
    assert_eq!(s["primes"], 21);
    assert_eq!(s["computed"], 21);
    assert_eq!(s["mismatches"], 0);
    let written = std::fs::read(&cache).unwrap();
    assert_eq!(written.iter().filter(|&&b| b == b'\n').count(), 21);

    let second = sweep(&cache, &[]);
    let t = json(&second);
    assert_eq!(t["cached"], 21);
    assert_eq!(t["computed"], 0);
    assert_eq!(std::fs::read(&cache).unwrap(), written);

    let forced = sweep(&cache, &["--force", "--jobs", "1"]);
    assert_eq!(json(&forced)["computed"], 21);
    assert_eq!(std::fs::read(&cache).unwrap(), written);
}

#[test]
fn sweep_extends_cache_and_reports_mismatches() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.jsonl");
    let cache_s = cache.to_str().unwrap();
    let a = run(&["sweep", "--field", "root2", "--from", "3", "--to", "20", "--cache", cache_s]);
    assert_eq!(code(&a), 1);
    assert_eq!(json(&a)["mismatched_primes"], serde_json::json!([3, 19]));
    let b = run(&["sweep", "--field", "root2", "--from", "3", "--to", "30", "--cache", cache_s]);
    let v = json(&b);
    assert_eq!(v["cached"], 7);
    assert_eq!(v["computed"], 2);
}

#[test]
fn sweep_rejects_bad_cache_and_empty_range() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.jsonl");
    assert_eq!(code(&sweep(&cache, &["--from", "90"])), 64);
    std::fs::write(&cache, "not json\n").unwrap();
    assert_eq!(code(&sweep(&cache, &[])), 74);
}

#[test]
fn lseries_base_change() {
    let out = run(&["lseries", "-p", "3", "--bound", "500"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("norm,a_q,a_k,a_q_squared\n"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 501);
    assert!(text.contains("# base_change=true p=3 bound=500"));

    let j = run(&["lseries", "-p", "5", "--bound", "100", "--format", "json"]);
    assert_eq!(code(&j), 0);
    let v = json(&j);
    assert_eq!(v["k"], v["q_squared"]);
    assert_eq!(v["k"].as_array().unwrap().len(), 100);
}

#[test]
fn reduce_and_torsion() {
    let out = run(&["reduce", "--field", "root7", "-p", "3"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["match"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);

    let t = run(&["torsion", "--field", "root2", "-p", "5"]);
    assert_eq!(code(&t), 0);
    assert_eq!(json(&t)["group"], "Z/2Z");
}

#[test]
fn props_one_line_per_suite() {
    let out = run(&["props", "--cases", "10", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 6);
    assert!(lines.iter().all(|l| l["failures"] == 0 && l["seed"] == 7));
}

#[test]
fn verify_paper_selected_criteria() {
    let out = run(&["verify-paper", "--quick", "--criterion", "1", "--criterion", "6"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("criterion 1 [PASS]"));
    assert!(lines[1].starts_with("criterion 6 [PASS]"));

    let failing = run(&["verify-paper", "--quick", "--criterion", "4", "--json"]);
    assert_eq!(code(&failing), 1);
    let v = json(&failing);
    assert_eq!(v[0]["passed"], false);
}
