//! End-to-end tests of the `polya-cert` binary: exit codes, record shape,
//! and byte determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polya-cert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polya-cert"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad json ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

#[test]
fn analyze_worked_example_record() {
    let out = run(&["analyze", "1,-1,1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["certificate_status"], "positive_on_nonneg");
    assert_eq!(v["l"], "1");
    assert_eq!(v["lambda_lo"], "1/4");
    assert_eq!(v["lambda_hi"], "1/4");
    assert_eq!(v["ratio_hi"], "4");
    assert_eq!(v["pr_threshold"], 3);
    assert_eq!(v["minimal_m"], 3);
    assert_eq!(v["exceeded_cap"], false);
    assert_eq!(v["pr_slack"], 0);
}

#[test]
fn analyze_cubic_record() {
    let out = run(&["analyze", "1,0,0,1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["improved_threshold"], 6);
    assert_eq!(v["minimal_m"], 2);
    assert_eq!(v["c_d"], "3/2");
    assert_eq!(v["winner"], "improved");
    assert_eq!(v["d3_ratio_ge_4_3"], true);
}

#[test]
fn analyze_not_positive_exits_one_with_witness() {
    let out = run(&["analyze", "1,-1", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["certificate_status"], "has_nonneg_root");
    let lo: f64 = v["witness"]["lo"].as_str().unwrap().parse().unwrap_or(0.0);
    assert!(v["witness"]["hi"].is_string());
    assert!(lo <= 1.0);
    assert!(v["minimal_m"].is_null());
}

#[test]
fn analyze_parse_error_exits_two() {
    let out = run(&["analyze", "1,zebra,3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
}

#[test]
fn unknown_flag_exits_two() {
    let out = run(&["analyze", "1,1", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn minimal_m_examples() {
    let out = run(&["minimal-m", "1,-1,1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["minimal_m"], 3);

    let out = run(&["minimal-m", "1,4,6,4,1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["minimal_m"], 0);

    let out = run(&["minimal-m", "1,-1,1", "--cap", "1", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["exceeded_cap"], true);
    assert!(v["minimal_m"].is_null());
}

#[test]
fn records_are_byte_deterministic() {
    for args in [
        vec!["analyze", "5,-3,2,1", "--json"],
        vec!["sweep", "--d", "3", "--m-max", "6", "--grid", "40", "--json"],
        vec!["verify", "--suite", "identity", "--trials", "3", "--seed", "9", "--json"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "args {args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn verify_suites_pass() {
    let out = run(&["verify", "--suite", "identity", "--trials", "5", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["verify", "--suite", "sign-table", "--d", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 28);
    let out = run(&["verify", "--suite", "sign-table", "--d", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["verify", "--suite", "partial-fractions"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn sweep_d3_passes_and_d4_reports_violations() {
    let out = run(&["sweep", "--d", "3", "--m-max", "8", "--grid", "60", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["violation_count"], 0);
    assert_eq!(v["claimed_c_d"], "3/2");

    // the degree-4 claim is refuted by exact arithmetic; exit code is honest
    let out = run(&["sweep", "--d", "4", "--m-max", "2", "--grid", "400", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["passed"], false);
    assert!(v["violation_count"].as_u64().unwrap() > 0);
    assert_eq!(v["violations"][0]["m"], 1);
}

#[test]
fn estimate_cd_reports() {
    // d=5 claimed bound 16.5 is refuted with the exact residues
    let out = run(&["estimate-cd", "--d", "5", "--grid", "100", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["claimed_bound"], "33/2");
    assert_eq!(v["claimed_label"], "conjectural, sweep-supported");
    assert_eq!(v["passed"], false);

    // no claimed bound for other degrees
    let out = run(&["estimate-cd", "--d", "3", "--grid", "100", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert!(v["claimed_bound"].is_null());
    let max: f64 = v["max_value_decimal"].as_str().unwrap().parse().unwrap();
    assert!(max > 1.5);
}

#[test]
fn thread_cap_env_var_is_honored() {
    let out = run_with_env(
        &["sweep", "--d", "3", "--m-max", "6", "--grid", "40", "--json"],
        "POLYA_CERT_THREADS",
        "1",
    );
    assert_eq!(out.status.code(), Some(0));
    // same record as the default-thread run
    let reference = run(&["sweep", "--d", "3", "--m-max", "6", "--grid", "40", "--json"]);
    assert_eq!(out.stdout, reference.stdout);
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}
