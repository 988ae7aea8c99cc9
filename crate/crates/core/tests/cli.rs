use std::fs;
use std::process::Command;

use dynr::cli::{self, EXIT_CHECK_FAILED, EXIT_CONFIG, EXIT_NUMERIC, EXIT_PASS};
use serde_json::Value;

fn run(args: &[&str]) -> cli::Outcome {
    let mut full = vec!["dynr"];
    full.extend_from_slice(args);
    cli::run(full)
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.exit_code, EXIT_PASS, "{}", out.output);
    serde_json::from_str(&out.output).unwrap()
}

#[test]
fn verify_reports_pass_with_controls() {
    let v = json(&["verify", "--algebra", "A2", "--family", "trig-spectral", "--X", "a1"]);
    assert_eq!(v["version"], 1);
    assert_eq!(v["algebra"], "A2");
    assert_eq!(v["seed"], 42);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["name"] == "cdybe" && c["pass"] == true && c["n_samples"] == 10));
    assert!(!v["controls"].as_array().unwrap().is_empty());
    assert!(v["wall_time_ms"].is_u64());
}

#[test]
fn fd_mode_uses_looser_default_tolerance() {
    let v = json(&["verify", "--algebra", "A1", "--family", "elliptic-spectral", "--tau", "i", "--fd"]);
    let cdybe = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "cdybe").unwrap().clone();
    assert_eq!(cdybe["tolerance"], 1e-6);
}

#[test]
fn tight_tolerance_fails_with_exit_one() {
    let out = run(&["verify", "--algebra", "A2", "--family", "elliptic-spectral", "--tau", "i", "--tolerance", "1e-30"]);
    assert_eq!(out.exit_code, EXIT_CHECK_FAILED);
    assert!(!out.report.unwrap().pass());
}

#[test]
fn configuration_errors_exit_two() {
    for args in [
        &["verify", "--algebra", "A2", "--family", "rational-constant", "--X", "a1,a2"][..],
        &["verify", "--algebra", "A2", "--family", "no-such-family"],
        &["verify", "--algebra", "A2", "--family", "trig-spectral", "--X", "a1", "--eps", "1+"],
        &["pair", "--algebra", "A2", "--l-roots", "a1,a2"],
        &["limits", "--schedule", "q:1,2"],
        &["series", "--tau", "0.1i"],
        &["polarize", "--algebra", "A2", "--Y", "a1,a2"],
        &["verify", "--spec", "{not json"],
    ] {
        assert_eq!(run(args).exit_code, EXIT_CONFIG, "{args:?}");
    }
}

#[test]
fn numeric_failures_exit_three() {
    let out = run(&["verify", "--algebra", "A1", "--family", "elliptic-spectral", "--tau", "1e-6i"]);
    assert_eq!(out.exit_code, EXIT_NUMERIC, "{}", out.output);
    assert!(out.output.contains("converge"));
    assert_eq!(cli::exit_code_for(&dynr::Error::SamplingExhausted(1000)), EXIT_NUMERIC);
    assert_eq!(cli::exit_code_for(&dynr::Error::PoleProximity("x".into())), EXIT_NUMERIC);
}

#[test]
fn spec_file_and_algebra_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    fs::write(&path, r#"{"family":"trig-cotanh","algebra":"B2","eps":[2.0,0.0]}"#).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(run(&["axioms", "--spec-file", p]).exit_code, EXIT_PASS);
    assert_eq!(run(&["axioms", "--spec-file", p, "--algebra", "B2"]).exit_code, EXIT_PASS);
    assert_eq!(run(&["axioms", "--spec-file", p, "--algebra", "A2"]).exit_code, EXIT_CONFIG);
}

#[test]
fn output_file_receives_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["axioms", "--algebra", "A1", "--family", "rational-spectral", "--output", path.to_str().unwrap()]);
    assert_eq!(out.exit_code, EXIT_PASS);
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["name"] == "residue"));
}

#[test]
fn combinatorics_commands() {
    let v = json(&["subsets", "--algebra", "A2"]);
    assert_eq!(v["count"], v["subsets"].as_array().unwrap().len());
    let p = json(&["polarize", "--algebra", "G2", "--Y", "a1,-a2"]);
    assert!(p["margin"].as_f64().unwrap() > 0.0);
    assert_eq!(p["positive"].as_array().unwrap().len(), 6);
}

#[test]
fn schedule_commands() {
    let v = json(&["limits", "--schedule", "tau:4i,6i,8i"]);
    assert_eq!(v["checks"][0]["name"], "cauchy");
    json(&["limits", "--algebra", "A2", "--schedule", "t:20,40", "--X", "a1"]);
    json(&["limits", "--algebra", "B2", "--schedule", "ray:1e4,1e6,1e8"]);
    json(&["pair", "--algebra", "A2", "--l-roots", "a1"]);
    json(&["series", "--algebra", "A1", "--tau", "2i", "--z", "0.3", "--N", "60"]);
}

#[test]
fn catalog_lists_all_families() {
    let out = run(&["catalog"]);
    let v: Value = serde_json::from_str(&out.output).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 6);
    let text = run(&["catalog", "--format", "text"]).output;
    assert!(text.contains("elliptic-spectral"));
}

#[test]
fn binary_propagates_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_dynr");
    let ok = Command::new(bin).args(["verify", "--algebra", "A1", "--family", "trig-cotanh"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_PASS));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("\"checks\""));
    let bad = Command::new(bin).args(["verify", "--algebra", "Q7", "--family", "trig-cotanh"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_CONFIG));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("error"));
}
