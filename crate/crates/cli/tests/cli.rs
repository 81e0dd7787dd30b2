use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_frontier-lp"))
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin().args(args).current_dir(dir).output().unwrap()
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap()
}

#[test]
fn missing_required_flag_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["fit", "--in", "pts.csv", "--lbeta", "1", "--fmax", "2"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--beta"));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["check-kernel", "--bogus"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn every_subcommand_has_help() {
    let dir = tempfile::tempdir().unwrap();
    for sub in ["sample", "fit", "solve", "check-kernel", "study", "diagnose"] {
        let out = run(&[sub, "--help"], dir.path());
        assert_eq!(out.status.code(), Some(0), "{sub}");
        assert!(!out.stdout.is_empty());
    }
}

#[test]
fn flat_frontier_round_trip_passes_the_surface_check() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = run(&["sample", "--frontier", "constant", "--value", "2", "--n", "400", "--seed", "3", "--out", "pts.csv"], d);
    assert!(out.status.success());
    // any upper bound on the Hölder coefficient is admissible for a flat frontier
    let out = run(
        &["fit", "--in", "pts.csv", "--beta", "2", "--lbeta", "1", "--fmax", "2", "--out", "model.json", "--grid-out", "curve.csv"],
        d,
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["diagnose", "--model", "model.json", "--frontier", "constant", "--value", "2", "--out", "diag.json"], d);
    assert!(out.status.success());
    let report = json(&d.join("diag.json"));
    assert_eq!(report["diagnostics"]["surface"]["pass"], true);
    assert_eq!(report["hard_pass"], true);
    assert!(report["l1_error"].as_f64().unwrap() < 0.1);
    let curve = std::fs::read_to_string(d.join("curve.csv")).unwrap();
    assert_eq!(curve.lines().count(), 1002);
}

#[test]
fn sine_pipeline_and_standalone_solve_agree() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(run(&["sample", "--frontier", "sine", "--n", "300", "--seed", "7", "--out", "pts.csv"], d).status.success());
    let out = run(
        &["fit", "--in", "pts.csv", "--beta", "2", "--lbeta", "19.74", "--fmax", "1.5", "--out", "model.json", "--lp-out", "problem.txt"],
        d,
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let model = json(&d.join("model.json"));
    let out = run(&["solve", "--lp", "problem.txt", "--out", "result.json"], d);
    assert!(out.status.success());
    let result = json(&d.join("result.json"));
    assert_eq!(result["status"], "optimal");
    let a = model["objective"].as_f64().unwrap();
    let b = result["objective"].as_f64().unwrap();
    assert!((a - b).abs() <= 1e-9 * a.max(1.0), "{a} vs {b}");
}

#[test]
fn json_samples_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(run(&["sample", "--frontier", "sine", "--n", "100", "--seed", "1", "--out", "pts.json"], d).status.success());
    let out = run(&["fit", "--in", "pts.json", "--beta", "2", "--lbeta", "19.74", "--fmax", "1.5", "--out", "m.json"], d);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn malformed_csv_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("bad.csv"), "x,y\n0.1,0.5\n0.2,oops\n").unwrap();
    let out = run(&["fit", "--in", "bad.csv", "--beta", "2", "--lbeta", "1", "--fmax", "2"], d);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn malformed_study_config_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("study.json"), "{\n  \"n_grid\": [100,\n}\n").unwrap();
    let out = run(&["study", "--config", "study.json"], d);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
}

#[test]
fn domain_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("one.csv"), "x,y\n0.5,1.0\n").unwrap();
    let out = run(&["fit", "--in", "one.csv", "--beta", "2", "--lbeta", "1", "--fmax", "2"], d);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["fit", "--in", "missing.csv", "--beta", "2", "--lbeta", "1", "--fmax", "2"], d);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_kernel_prints_all_deviations() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["check-kernel"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for h in ["0.05", "0.1", "0.2"] {
        assert!(text.lines().any(|l| l.trim_start().starts_with(h)), "{text}");
    }
    assert!(text.contains("mass_u") && text.contains("moment_x"));
    // the unrestricted x-moment exceeds the tolerance, so strict mode fails
    let out = run(&["check-kernel", "--strict"], dir.path());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn study_writes_report_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(
        d.join("study.json"),
        r#"{"frontier": {"kind": "sine", "a0": 1.0, "a1": 0.5}, "n_grid": [50, 100], "replications": 3}"#,
    )
    .unwrap();
    let out = run(&["study", "--config", "study.json", "--out", "r.json", "--csv", "rows.csv"], d);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&d.join("r.json"));
    assert_eq!(report["rows"].as_array().unwrap().len(), 6);
    assert!(report["rate_fit"].is_null());
    assert!(report["meta"].is_object());
    let rows = std::fs::read_to_string(d.join("rows.csv")).unwrap();
    assert_eq!(rows.lines().count(), 7);
}
