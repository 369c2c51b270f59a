//! End-to-end tests of the `magtrans` binary: exit codes, determinism,
//! format gating, and the bundled configuration files.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_magtrans"))
}

fn configs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .canonicalize()
        .expect("configs directory exists")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["pentagon", "--seed", "42", "--samples", "50", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn all_with_bundled_config_passes() {
    let cfg = configs_dir().join("default.json");
    let out = run(&["all", "--config", cfg.to_str().unwrap(), "--samples", "60"]);
    let text = stdout_of(&out);
    assert_eq!(out.status.code(), Some(0), "stdout:\n{text}");
    assert!(text.contains("overall: pass"));
    assert!(text.contains("rsolve-determinant"));
    assert!(text.contains("fock-equivalence"));
}

#[test]
fn malformed_config_is_an_input_error() {
    let mut file = tempfile::NamedTempFile::new().expect("temp file");
    write!(file, "{{ \"dimension\": 3, \"bogus_field\": 1 }}").unwrap();
    let out = run(&["c3", "--config", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn half_integer_flux_fails_torus_with_witness() {
    let cfg = configs_dir().join("half_flux.json");
    let out = run(&["torus", "--config", cfg.to_str().unwrap()]);
    let text = stdout_of(&out);
    assert_eq!(out.status.code(), Some(1), "stdout:\n{text}");
    assert!(text.contains("is_integral=false"));
    assert!(text.contains("witness[1,2,3]=1/2"));
    assert!(text.contains("witness_exponent"));
}

#[test]
fn csv_is_rejected_outside_loops() {
    let out = run(&["c3", "--format", "csv", "--samples", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("csv"));
}

#[test]
fn loops_csv_has_table_rows() {
    let out = run(&["loops", "--samples", "4", "--format", "csv"]);
    let text = stdout_of(&out);
    assert_eq!(out.status.code(), Some(0), "stdout:\n{text}");
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("kind,index,lhs,rhs,aux1,aux2,verdict")
    );
    assert!(text.lines().any(|l| l.starts_with("c2,")));
    assert!(text.lines().any(|l| l.starts_with("holonomy,")));
    assert!(text.lines().any(|l| l.starts_with("su2,")));
}

#[test]
fn fock_cocycle_reads_structured_input() {
    let cfg = configs_dir().join("fock_cocycle_example.json");
    let out = run(&["fock-cocycle", cfg.to_str().unwrap(), "--format", "json"]);
    let text = stdout_of(&out);
    assert_eq!(out.status.code(), Some(0), "stdout:\n{text}");
    let parsed: serde_json::Value = serde_json::from_str(&text).expect("valid json");
    let values = &parsed["records"][0]["values"];
    assert_eq!(values["linear[1]"], "-1/1");
    assert_eq!(parsed["records"][0]["verdict"], true);
}

#[test]
fn missing_input_file_is_an_input_error() {
    let out = run(&["fock-cocycle", "/nonexistent/input.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rsolve_reports_the_sixth_turn_coefficient() {
    let out = run(&["rsolve", "--format", "json"]);
    let text = stdout_of(&out);
    assert_eq!(out.status.code(), Some(0), "stdout:\n{text}");
    let parsed: serde_json::Value = serde_json::from_str(&text).expect("valid json");
    assert_eq!(parsed["records"][0]["values"]["beta"], "1/6");
}
