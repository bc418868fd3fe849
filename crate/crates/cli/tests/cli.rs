//! End-to-end tests of the command-line interface: document shapes, exit
//! codes, determinism, and the cache.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_macqt"));
    // keep tests hermetic even if the environment configures a cache
    c.env_remove("MACQT_CACHE_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("macqt-cli-test-{}-{tag}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    dir
}

#[test]
fn compute_integral_form_json() {
    let out = run(&["compute", "J", "--lambda", "1,1", "--n", "2"]);
    assert!(out.status.success());
    let doc = stdout(&out);
    assert!(doc.contains("\"kind\": \"J\""));
    assert!(doc.contains("\"mu\": \"1,1\""));
    assert!(doc.contains("\"coefficient\": \"1 - t - t^2 + t^3\""));
}

#[test]
fn compute_latex_monic_base_case() {
    let out = run(&["compute", "P", "--lambda", "1", "--n", "1", "--format", "latex"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "m_{(1)}");
}

#[test]
fn compute_modified_form_defaults_n() {
    let out = run(&["compute", "Jmod", "--lambda", "1", "--format", "latex"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "m_{(1)}");
}

#[test]
fn kostka_table_csv_pins_size_two() {
    let out = run(&["table", "K", "--size", "2", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "lambda\\mu,2,\"1,1\"\n2,1,t\n\"1,1\",q,1\n"
    );
}

#[test]
fn b_table_contains_q_binomial_entry() {
    let out = run(&["table", "B", "--size", "2"]);
    assert!(out.status.success());
    let doc = stdout(&out);
    assert!(doc.contains("\"1 + q\""));
    assert!(doc.contains("\"1 + t\""));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let a = run(&["table", "K", "--size", "3"]);
    let b = run(&["table", "K", "--size", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn parallel_table_matches_sequential() {
    let seq = run(&["table", "B", "--size", "3"]);
    let par = run(&["--jobs", "3", "table", "B", "--size", "3"]);
    assert!(seq.status.success() && par.status.success());
    assert_eq!(seq.stdout, par.stdout);
}

#[test]
fn verify_suite_passes_and_reports() {
    let out = run(&["verify", "multinomial", "--size", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("ok  q=t=1 specialization is the multinomial coefficient"));
    assert!(text.contains("5/5 pass"));

    let json = run(&["verify", "kostka", "--size", "3", "--format", "json"]);
    assert!(json.status.success());
    assert!(stdout(&json).contains("\"status\": \"pass\""));
}

#[test]
fn scan_positivity_reports_clean_small_sizes() {
    let out = run(&["scan-positivity", "--size", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"all_nonnegative\": true"));

    let csv = run(&["scan-positivity", "--size", "2", "--format", "csv"]);
    assert!(csv.status.success());
    let text = stdout(&csv);
    assert!(text.starts_with("lambda,mu,"));
    assert_eq!(text.lines().count(), 5, "header plus four entries");
}

#[test]
fn usage_errors_exit_two() {
    let bad_partition = run(&["compute", "J", "--lambda", "1,x", "--n", "2"]);
    assert_eq!(bad_partition.status.code(), Some(2));

    let too_few_vars = run(&["compute", "P", "--lambda", "2,1", "--n", "1"]);
    assert_eq!(too_few_vars.status.code(), Some(2));

    let zero_size = run(&["table", "K", "--size", "0"]);
    assert_eq!(zero_size.status.code(), Some(2));

    let unknown = run(&["frobnicate"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn empty_partition_spellings() {
    let dash = run(&["compute", "J", "--lambda", "-", "--n", "1", "--format", "latex"]);
    assert!(dash.status.success());
    assert_eq!(stdout(&dash).trim(), "1");

    let zero = run(&["compute", "J", "--lambda", "0", "--n", "1", "--format", "latex"]);
    assert_eq!(stdout(&zero), stdout(&dash));
}

#[test]
fn cache_round_trip_and_eviction() {
    let dir = scratch("cache");
    let dir_s = dir.to_str().unwrap();

    let cold = bin()
        .args(["--cache-dir", dir_s, "compute", "J", "--lambda", "3,1", "--n", "4"])
        .output()
        .unwrap();
    assert!(cold.status.success());
    let entry = dir.join("J_3-1_n4_v0.1.0.json");
    assert!(entry.exists(), "cache file with readable name");

    let warm = bin()
        .args(["--cache-dir", dir_s, "compute", "J", "--lambda", "3,1", "--n", "4"])
        .output()
        .unwrap();
    assert_eq!(cold.stdout, warm.stdout, "hit renders the same bytes");

    // corrupt the entry: the next run must evict, recompute, and still be right
    fs::write(&entry, b"garbage").unwrap();
    let healed = bin()
        .args(["--cache-dir", dir_s, "compute", "J", "--lambda", "3,1", "--n", "4"])
        .output()
        .unwrap();
    assert_eq!(cold.stdout, healed.stdout);

    // environment variable configures the same cache; the flag would win
    let via_env = bin()
        .env("MACQT_CACHE_DIR", dir_s)
        .args(["compute", "J", "--lambda", "3,1", "--n", "4"])
        .output()
        .unwrap();
    assert_eq!(cold.stdout, via_env.stdout);

    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn no_cache_skips_writing() {
    let dir = scratch("nocache");
    let out = bin()
        .env("MACQT_CACHE_DIR", dir.to_str().unwrap())
        .args(["--no-cache", "compute", "P", "--lambda", "2", "--n", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(!dir.exists(), "no cache directory created");
}
