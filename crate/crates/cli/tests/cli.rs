//! End-to-end checks of the command-line surface: flag parsing, config
//! files, output formats, exit codes, and the CSV round trip back into a
//! tabulated profile.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bottomless"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .expect("header line")
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    (header, rows)
}

fn tmpdir() -> tempfile::TempDir {
    tempfile::tempdir().expect("tempdir")
}

#[test]
fn construct_default_emits_reference_pair() {
    let out = run(&["construct"]);
    assert!(out.status.success());
    let (header, rows) = parse_csv(&stdout_str(&out));
    assert_eq!(header, ["x", "v", "psi_plus", "psi_minus", "energy"]);
    assert_eq!(rows.len(), 2001);
    // center row: x = 0, V(0) = -109/144, psi_plus = 1, psi_minus = 0
    let center = &rows[1000];
    assert_eq!(center[0].parse::<f64>().unwrap(), 0.0);
    let v0: f64 = center[1].parse().unwrap();
    assert!((v0 + 109.0 / 144.0).abs() <= 1e-15, "v(0) = {v0}");
    assert_eq!(center[2].parse::<f64>().unwrap(), 1.0);
    assert_eq!(center[3].parse::<f64>().unwrap(), 0.0);
    assert_eq!(center[4].parse::<f64>().unwrap(), -0.25);
}

#[test]
fn construct_gamma_zero_kills_odd_state() {
    let out = run(&[
        "construct", "--family", "lorentz", "--a", "1", "--gamma", "0", "--xmax", "4", "--n",
        "401",
    ]);
    assert!(out.status.success());
    let (_, rows) = parse_csv(&stdout_str(&out));
    for row in &rows {
        assert_eq!(row[3].parse::<f64>().unwrap(), 0.0);
    }
}

#[test]
fn construct_rejects_malformed_flag_and_writes_nothing() {
    let dir = tmpdir();
    let out_path = dir.path().join("never.csv");
    let out = bin()
        .args(["construct", "--xmax", "not-a-number"])
        .args(["--out", out_path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!out_path.exists());
}

#[test]
fn construct_rejects_conflicting_amplitudes() {
    let out = run(&["construct", "--a1", "1/144", "--gamma", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rational_flag_syntax_matches_decimal() {
    let a = run(&["construct", "--a1", "1/144", "--n", "101", "--xmax", "2"]);
    let b = run(&["construct", "--a1", "0.006944444444444444", "--n", "101", "--xmax", "2"]);
    assert!(a.status.success());
    assert_eq!(stdout_str(&a), stdout_str(&b));
}

#[test]
fn verify_reference_pair_passes() {
    let out = run(&["verify", "--xmax", "8", "--n", "4001"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["all_pass"], serde_json::Value::Bool(true));
    assert!(doc["residual_max_plus"]["value"].as_f64().unwrap() <= 1e-8);
    assert_eq!(doc["residual_max_plus"]["threshold"].as_f64().unwrap(), 1e-8);
}

#[test]
fn verify_inject_fault_fails_with_exit_one() {
    let dir = tmpdir();
    let report = dir.path().join("report.json");
    let out = bin()
        .args(["verify", "--xmax", "8", "--n", "2001", "--inject-fault"])
        .args(["--out", report.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    // the failing report is still written
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["all_pass"], serde_json::Value::Bool(false));
}

#[test]
fn verify_csv_format_is_flat_key_value() {
    let out = run(&["verify", "--xmax", "6", "--n", "1001", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let (header, rows) = parse_csv(&text);
    assert_eq!(header, ["check", "value", "threshold", "pass"]);
    assert!(rows.iter().any(|r| r[0] == "wronskian_drift"));
    assert!(rows.iter().all(|r| r[3] == "true"));
}

#[test]
fn verify_empty_grid_is_config_error() {
    let out = run(&["verify", "--n", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn wellscape_examples_classify() {
    let out = run(&["wellscape", "--a", "1", "--gamma-sq", "0.01"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["regime"], "WellStatesInside");

    let out = run(&["wellscape", "--gamma-sq", "2"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["regime"], "ConvexNoWell");

    let out = run(&["wellscape", "--gamma-sq", "1/16"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["regime"], "CriticalBoundary");
    assert_eq!(doc["z"].as_f64().unwrap(), 1.0);

    let out = run(&["wellscape"]);
    assert_eq!(out.status.code(), Some(2)); // gamma missing
}

#[test]
fn sweep_csv_has_contract_header() {
    let out = run(&["sweep", "--a", "1", "--gamma-sq", "0.001,0.05,0.5,1.9,3"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let (header, rows) = parse_csv(&text);
    assert_eq!(header, ["gamma_sq", "regime", "z", "x_max", "barrier"]);
    assert_eq!(rows.len(), 5);
    let regimes: Vec<&str> = rows.iter().map(|r| r[1].as_str()).collect();
    assert_eq!(
        regimes,
        [
            "WellStatesInside",
            "WellStatesInside",
            "WellStatesAbove",
            "WellStatesAbove",
            "ConvexNoWell"
        ]
    );
    // the gamma² > 2a⁴ row has empty z/x_max/barrier fields
    assert_eq!(rows[4][2], "");
    assert_eq!(rows[4][3], "");
    assert_eq!(rows[4][4], "");
}

#[test]
fn spectrum_free_box_and_empty_window() {
    let out = run(&[
        "spectrum",
        "--family",
        "free",
        "--half-width",
        "3.141592653589793",
        "--step",
        "0.00157",
        "--window",
        "0.1:3",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let eigen = doc["eigenvalues"].as_array().unwrap();
    assert_eq!(eigen.len(), 2);
    assert!((eigen[0].as_f64().unwrap() - 0.25).abs() < 1e-6);
    assert!((eigen[1].as_f64().unwrap() - 2.25).abs() < 1e-6);
    assert_eq!(doc["empty"], serde_json::Value::Bool(false));

    let out = run(&[
        "spectrum",
        "--family",
        "free",
        "--half-width",
        "3.141592653589793",
        "--step",
        "0.00157",
        "--window",
        "0.3:2.2",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["empty"], serde_json::Value::Bool(true));
    assert!(doc["eigenvalues"].as_array().unwrap().is_empty());
}

#[test]
fn spectrum_window_defaults_near_analytic_energy() {
    // No --window: the solver centers the search on the analytic energy
    // with 25% of the node-counted level spacing on each side.
    let out = run(&[
        "spectrum",
        "--family",
        "sech-power",
        "--a1",
        "1/144",
        "--half-width",
        "3.6303394135070255",
        "--step",
        "0.001",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let eigen = doc["eigenvalues"].as_array().unwrap();
    assert_eq!(eigen.len(), 1);
    assert!((eigen[0].as_f64().unwrap() + 0.25).abs() < 1e-4);

    // The free potential has no analytic energy to center on.
    let out = run(&[
        "spectrum", "--family", "free", "--half-width", "3.14", "--step", "0.01",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn spectrum_trace_is_written() {
    let dir = tmpdir();
    let trace = dir.path().join("trace.csv");
    let out = bin()
        .args([
            "spectrum",
            "--family",
            "free",
            "--half-width",
            "3.141592653589793",
            "--step",
            "0.0157",
            "--window",
            "0.1:1",
        ])
        .args(["--trace", trace.to_str().unwrap(), "--out", "-"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&trace).unwrap();
    let (header, rows) = parse_csv(&text);
    assert_eq!(header, ["x", "psi"]);
    assert_eq!(rows.len(), 201); // L/h + 1 points
    assert_eq!(rows[0][1].parse::<f64>().unwrap(), 1.0); // even start
}

#[test]
fn config_file_supplies_defaults_flags_override() {
    let dir = tmpdir();
    let cfg = dir.path().join("run.conf");
    std::fs::write(
        &cfg,
        "# reference lorentz run\nfamily = lorentz\na = 1\ngamma = 1\nxmax = 4\nn = 401\n",
    )
    .unwrap();

    let from_cfg = bin()
        .args(["construct", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(from_cfg.status.success());
    let (_, rows) = parse_csv(&stdout_str(&from_cfg));
    assert_eq!(rows.len(), 401);
    // gamma = 1 from the file: odd state is nonzero off-origin
    assert!(rows[100][3].parse::<f64>().unwrap() != 0.0);

    // flag overrides the file's gamma
    let overridden = bin()
        .args(["construct", "--config", cfg.to_str().unwrap(), "--gamma", "0"])
        .output()
        .unwrap();
    assert!(overridden.status.success());
    let (_, rows) = parse_csv(&stdout_str(&overridden));
    assert!(rows.iter().all(|r| r[3].parse::<f64>().unwrap() == 0.0));

    let bad = bin()
        .args(["construct", "--config", "/nonexistent.conf"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));

    std::fs::write(&cfg, "gamma: 1\n").unwrap();
    let malformed = bin()
        .args(["construct", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(malformed.status.code(), Some(2));
}

#[test]
fn figure2_curve_shape() {
    let out = run(&["figure2"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let (header, rows) = parse_csv(&text);
    assert_eq!(header, ["x", "v"]);
    let values: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap()))
        .collect();
    let mid = values.len() / 2;
    assert_eq!(values[mid], (0.0, -1.0));
    // monotone decay beyond the maxima at |x| = sqrt 2
    let sqrt2 = 2.0f64.sqrt();
    let mut prev: Option<f64> = None;
    for &(x, v) in values.iter().filter(|(x, _)| *x > sqrt2) {
        if let Some(p) = prev {
            assert!(v < p, "tail not monotone at x = {x}");
        }
        assert!(v > 0.0);
        prev = Some(v);
    }
}

/// The construct CSV feeds back in as a tabulated profile: extract
/// (x, psi_plus) from a gamma = 0 run (psi_plus = f there), reload it, and
/// run the full verify battery on a pair built from the reloaded profile.
#[test]
fn construct_csv_round_trips_into_tabulated_profile() {
    let dir = tmpdir();
    let csv_path = dir.path().join("envelope.csv");
    let out = bin()
        .args([
            "construct", "--family", "lorentz", "--a", "1", "--gamma", "0", "--xmax", "6",
            "--n", "601",
        ])
        .args(["--out", csv_path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());

    let text = std::fs::read_to_string(&csv_path).unwrap();
    let (_, rows) = parse_csv(&text);
    let profile_path: PathBuf = dir.path().join("envelope.dat");
    let mut dat = String::new();
    for row in &rows {
        dat.push_str(&format!("{} {}\n", row[0], row[2]));
    }
    std::fs::write(&profile_path, dat).unwrap();

    let verified = bin()
        .args([
            "verify",
            "--family",
            "tabulated",
            "--profile-file",
            profile_path.to_str().unwrap(),
            "--gamma",
            "0.5",
            "--xmax",
            "5",
            "--n",
            "1001",
        ])
        .output()
        .unwrap();
    assert!(
        verified.status.success(),
        "tabulated verify failed: {}",
        String::from_utf8_lossy(&verified.stderr)
    );
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "construct", "--family", "lorentz", "--a", "1", "--gamma", "1", "--xmax", "8", "--n",
        "1001",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn numerical_failures_exit_three() {
    // Numerov step too coarse for the requested energy window.
    let out = run(&[
        "spectrum", "--family", "free", "--half-width", "3.14", "--step", "0.1", "--window",
        "50:60",
    ]);
    assert_eq!(out.status.code(), Some(3));

    // Grid too coarse to separate adjacent zeros (phase advance >= pi/cell).
    let out = run(&[
        "verify", "--family", "lorentz", "--a", "1", "--gamma", "40", "--xmax", "8", "--n",
        "401",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unwritable_output_path_is_config_error() {
    let out = run(&[
        "figure2",
        "--n",
        "11",
        "--out",
        "/nonexistent-dir/fig2.csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!Path::new("/nonexistent-dir/fig2.csv").exists());
}
