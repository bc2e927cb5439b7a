//! End-to-end checks of the binary: exit codes, diagnostics on stderr,
//! and the side effects of --out and --csv.

use std::process::{Command, Output};

use tempfile::tempdir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hasym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn data(file: &str) -> String {
    format!("{}/tests/data/{}", env!("CARGO_MANIFEST_DIR"), file)
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn analyze_degenerate_input_exits_zero() {
    let out = run(&["analyze", &data("diag_1_1_2.json")]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["degenerate"], true);
    assert_eq!(report["within_tolerance"], true);
    assert_eq!(report["command"], "analyze");
    assert!(report["input_digest"]
        .as_str()
        .unwrap()
        .starts_with("sha256:"));
}

#[test]
fn analyze_gapped_input_exits_two() {
    let out = run(&["analyze", &data("diag_1_2_3.json")]);
    assert_eq!(out.status.code(), Some(2));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["degenerate"], false);
    assert_eq!(report["clusters"].as_array().unwrap().len(), 0);
}

#[test]
fn irrep_self_paired_representation_exits_three() {
    let out = run(&["irrep", &data("irrep_sigma_zz.json")]);
    assert_eq!(out.status.code(), Some(3));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["forced"], false);
    assert_eq!(report["rank"], 2);
}

#[test]
fn certify_wrong_symmetry_exits_four_but_still_reports() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("certify.json");
    let out = run(&[
        "certify",
        &data("h_diag_1_2.json"),
        "--operator",
        &data("op_symplectic.json"),
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
    let report: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(report["certified"], false);
    assert_eq!(report["pairs"].as_array().unwrap().len(), 0);
    // the measured symmetry residuals still land in the report
    assert!(report["symmetry"]["commutator_residual"].as_f64().unwrap() > 1e-8);
}

#[test]
fn certify_commuting_operator_exits_zero() {
    let out = run(&[
        "certify",
        &data("h_twice_identity.json"),
        "--operator",
        &data("op_symplectic.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["certified"], true);
    assert_eq!(report["pairs"].as_array().unwrap().len(), 2);
}

#[test]
fn malformed_json_reports_line_and_column() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\n  \"format\": 1,,\n}\n").unwrap();
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_of(&out);
    assert!(err.contains("line 2"), "diagnostic was: {err}");
}

#[test]
fn non_hermitian_input_rejected_with_deviation() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("skew.json");
    // a 2x2 with H[0][1] far from conj(H[1][0])
    let body = serde_json::json!({
        "format": 1,
        "dim": 2,
        "entries": [[1.0, 0.0], [0.5, 0.0], [0.0, 0.0], [2.0, 0.0]]
    });
    std::fs::write(&path, serde_json::to_string_pretty(&body).unwrap()).unwrap();
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_of(&out);
    assert!(err.contains("not Hermitian"), "diagnostic was: {err}");
}

#[test]
fn unknown_model_lists_known_names() {
    let out = run(&["scan", "kagome", "--resolution", "8"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_of(&out);
    for name in ["linear2", "honeycomb", "piflux"] {
        assert!(err.contains(name), "missing {name} in: {err}");
    }
}

#[test]
fn scan_without_refine_exits_zero_on_candidates() {
    let out = run(&["scan", "linear2", "--resolution", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["candidates"].as_array().unwrap().len(), 1);
    assert_eq!(report["points"].as_array().unwrap().len(), 0);
    assert_eq!(report["node_count"], 9 * 9 * 9);
}

#[test]
fn scan_with_no_minima_below_threshold_exits_two() {
    // a 4-node axis skips zero, so every grid gap is at least 2*|2/3| per axis
    let out = run(&[
        "scan", "linear2", "--resolution", "4", "--threshold", "0.1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_out_and_csv_write_parseable_files() {
    let dir = tempdir().unwrap();
    let report_path = dir.path().join("scan.json");
    let csv_path = dir.path().join("field.csv");
    let out = run(&[
        "scan",
        "piflux",
        "--resolution",
        "32",
        "--refine",
        "--out",
        report_path.to_str().unwrap(),
        "--csv",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));

    let report: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&report_path).unwrap()).unwrap();
    assert_eq!(report["points"].as_array().unwrap().len(), 4);
    assert_eq!(report["model"], "piflux");

    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("alpha1,alpha2,gap"));
    assert_eq!(lines.count(), 32 * 32);
}

#[test]
fn analyze_out_writes_same_report_as_stdout() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("report.json");
    let piped = run(&["analyze", &data("diag_1_1_2.json")]);
    let filed = run(&[
        "analyze",
        &data("diag_1_1_2.json"),
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(filed.status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), piped.stdout);
}

#[test]
fn usage_errors_exit_one() {
    let unknown_flag = run(&["analyze", &data("diag_1_1_2.json"), "--frobnicate"]);
    assert_eq!(unknown_flag.status.code(), Some(1));

    let missing_resolution = run(&["scan", "linear2"]);
    assert_eq!(missing_resolution.status.code(), Some(1));

    let no_subcommand = run(&[]);
    assert_eq!(no_subcommand.status.code(), Some(1));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn missing_file_exits_one() {
    let out = run(&["analyze", "/nonexistent/h.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("error:"));
}
