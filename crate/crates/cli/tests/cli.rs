//! Runs the `cmc4` binary and checks exit codes and report shapes.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn cmc4(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmc4"))
        .args(args)
        .env_remove("CMC4_FIXTURES")
        .output()
        .unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("cmc4-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

#[test]
fn missing_fixtures_is_a_config_error() {
    let out = cmc4(&["verify", "caseB", "--fixtures", "./definitely-missing"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("fixtures directory not found"));
}

#[test]
fn unknown_stage_is_a_config_error() {
    let out = cmc4(&[
        "verify",
        "caseZ",
        "--fixtures",
        fixtures().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn zero_threads_is_a_config_error() {
    let out = cmc4(&[
        "verify",
        "caseB",
        "--threads",
        "0",
        "--fixtures",
        fixtures().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn empty_stage_list_prints_empty_array() {
    let out = cmc4(&[
        "verify",
        "--json",
        "--fixtures",
        fixtures().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "[]");
}

#[test]
fn case_b_json_report() {
    let out = cmc4(&[
        "verify",
        "caseB",
        "--json",
        "--threads",
        "2",
        "--fixtures",
        fixtures().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let stage = &v.as_array().unwrap()[0];
    assert_eq!(stage["stage"], "caseB");
    assert_eq!(stage["verdict"], "Certified");
    let steps = stage["steps"].as_array().unwrap();
    let s450 = steps.iter().find(|s| s["paper_eq"] == "4.50").unwrap();
    assert!(s450["method"] == "SylvesterBareiss" || s450["method"] == "LinearSolve");
    for key in [
        "id",
        "paper_eq",
        "match",
        "method",
        "weight",
        "degree_summary",
        "elapsed_ms",
    ] {
        assert!(s450.get(key).is_some(), "missing {key}");
    }
    assert!(s450.get("derived").is_none());
}

#[test]
fn verbose_json_carries_polynomials() {
    let out = cmc4(&[
        "verify",
        "identities",
        "--json",
        "--verbose",
        "--fixtures",
        fixtures().to_str().unwrap(),
    ]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let steps = v[0]["steps"].as_array().unwrap();
    assert!(steps.iter().all(|s| s["derived"].is_string()));
}

#[test]
fn fixtures_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_cmc4"))
        .args(["verify", "frame"])
        .env("CMC4_FIXTURES", fixtures())
        .current_dir(std::env::temp_dir())
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).contains("== frame certified"));
}

#[test]
fn best_effort_needs_the_flag() {
    let fx = fixtures();
    let fx = fx.to_str().unwrap();
    assert_eq!(
        cmc4(&["verify", "caseiii", "--fixtures", fx]).status.code(),
        Some(1)
    );
    assert_eq!(
        cmc4(&["verify", "caseiii", "--allow-best-effort", "--fixtures", fx])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn latex_files_per_equation() {
    let dir = scratch("tex");
    let out = cmc4(&[
        "verify",
        "caseB",
        "--latex-out",
        dir.to_str().unwrap(),
        "--fixtures",
        fixtures().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let tex = std::fs::read_to_string(dir.join("4.47.tex")).unwrap();
    assert!(tex.contains("y_1") && tex.contains("\\["));
    assert!(dir.join("4.56.tex").exists());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn mismatch_reports_failure_with_diff() {
    let dir = scratch("tamper");
    std::fs::create_dir_all(&dir).unwrap();
    for f in std::fs::read_dir(fixtures()).unwrap() {
        let f = f.unwrap().path();
        let text = std::fs::read_to_string(&f)
            .unwrap()
            .replace("4.43: ", "4.43: 5*c^2 + ");
        std::fs::write(dir.join(f.file_name().unwrap()), text).unwrap();
    }
    let out = cmc4(&[
        "verify",
        "caseB",
        "--json",
        "--fixtures",
        dir.to_str().unwrap(),
    ]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["verdict"], "Failed");
    let step = v[0]["steps"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["paper_eq"] == "4.43")
        .unwrap()
        .clone();
    assert_eq!(step["match"], "Mismatch");
    assert!(!step["diff"].as_array().unwrap().is_empty());
}
