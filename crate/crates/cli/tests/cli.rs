//! End-to-end runs of the `tswave` binary: exit codes, determinism and artifact formats.

use std::path::Path;
use std::process::{Command, Output};

fn tswave(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tswave")).args(args).env_remove("TSWAVE_WORKERS").output().expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn invalid_mach_in_config_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"schema_version": 1, "physics": {"m": 1.2}}"#).unwrap();
    let out = tswave(&["--config", path(&cfg), "dispersion", "solve"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("config error"));
}

#[test]
fn unknown_config_field_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"schema_version": 1, "physics": {"mach": 0.3}}"#).unwrap();
    assert_eq!(tswave(&["--config", path(&cfg), "fast-mode"]).status.code(), Some(1));
}

#[test]
fn solver_failure_exits_two() {
    let out = tswave(&["dispersion", "solve", "--nu", "1e-7", "--A", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dispersion.invalid-regime"));
}

#[test]
fn dispersion_solve_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"schema_version": 1, "physics": {"nu": 1e-16, "m": 0.3}, "wave": {"amplitude": 10}}"#)
        .unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for (target, workers) in [(&a, "1"), (&b, "3")] {
        let out = tswave(&["--config", path(&cfg), "--json", path(target), "--workers", workers, "dispersion", "solve"]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(!x.is_empty());
    assert_eq!(x, y);
    let v: serde_json::Value = serde_json::from_slice(&x).unwrap();
    assert!(v["point"]["c"][1].as_f64().unwrap() > 0.0);
}

#[test]
fn sweep_csv_has_hash_and_header() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sweep.csv");
    let json = dir.path().join("fit.json");
    let out = tswave(&[
        "--csv",
        path(&csv),
        "--json",
        path(&json),
        "dispersion",
        "sweep",
        "--nu-decades",
        "16:18",
        "--A",
        "10",
        "--m",
        "0.3",
        "--observable",
        "c_i",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# config-sha256 "));
    assert_eq!(lines[1], "nu,c_i,residual,re_c,im_c");
    assert_eq!(lines.len(), 5);
    let fit: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let slope = fit["fit"]["exponent"].as_f64().unwrap();
    assert!((slope - 0.125).abs() < 0.02, "{slope}");
}

#[test]
fn worker_env_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_tswave"))
        .args(["reproduce", "helmholtz"])
        .env("TSWAVE_WORKERS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reproduce_prints_a_verdict() {
    let out = tswave(&["reproduce", "helmholtz"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("PASS 12 helmholtz"));
    assert_eq!(tswave(&["reproduce", "no-such-check"]).status.code(), Some(1));
}

#[test]
fn blasius_table_feeds_a_custom_profile() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("blasius.csv");
    let out = tswave(&["--csv", path(&table), "blasius", "--points", "801", "--y-max", "40"]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&table).unwrap();
    assert_eq!(text.lines().nth(1), Some("Y,U,U',U'',U''',U''''"));
    let cfg = dir.path().join("custom.json");
    let body = format!(
        r#"{{"schema_version": 1, "profile": {{"kind": "custom-table", "table": {:?}}}, "physics": {{"nu": 1e-8}}, "wave": {{"alpha": [0.05, 0.0], "c": [0.2, 0.01]}}}}"#,
        path(&table)
    );
    std::fs::write(&cfg, body).unwrap();
    let dump = dir.path().join("langer.csv");
    let out = tswave(&["--config", path(&cfg), "--csv", path(&dump), "langer-dump", "--points", "50"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&dump).unwrap();
    assert_eq!(text.lines().nth(1), Some("Y,eta_r,d_eta,d2_eta,abs_err1,abs_err2"));
    assert_eq!(text.lines().count(), 52);
}

#[test]
fn fast_mode_reports_wall_ratio() {
    let out = tswave(&["fast-mode", "--nu", "1e-12", "--m", "0.3", "--alpha-re", "0.03", "--c-re", "0.12", "--c-im", "0.004"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["abs_airy_arg_wall"].as_f64().unwrap() >= 5.0);
    assert!(v["large_argument_delta_scaled"].as_f64().unwrap() <= 0.2);
}

#[test]
fn rayleigh_mode_writes_profile_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("phi.csv");
    let out = tswave(&["--csv", path(&csv), "rayleigh-mode", "--nu", "1e-8", "--alpha-re", "0.05", "--c-re", "0.15"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["deltas"]["wall_value"].is_f64());
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().nth(1), Some("Y,re_phi,im_phi"));
}

#[test]
fn airy_check_covers_test_set() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("airy.csv");
    assert!(tswave(&["--csv", path(&csv), "airy-check"]).status.success());
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 202);
}
