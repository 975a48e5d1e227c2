//! Deterministic emission: CSV with 17-significant-digit floats (full f64
//! round-trip precision, so golden files double as numerical regressions)
//! and JSON documents with a fixed field order.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::errors::CliError;

/// 17 significant digits in scientific notation; round-trips every f64.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Option rendered as an empty CSV field when absent.
pub fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

/// Write to a file, or to stdout when the path is `-`.
pub fn write_output(path: &Path, contents: &str) -> Result<(), CliError> {
    if path.as_os_str() == "-" {
        std::io::stdout()
            .write_all(contents.as_bytes())
            .map_err(CliError::from)
    } else {
        std::fs::write(path, contents).map_err(|e| {
            CliError::config(format!("cannot write {}: {e}", path.display()))
        })
    }
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::config(format!("JSON encoding failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

/// One verification check: measured value, pass threshold, verdict.
#[derive(Serialize)]
pub struct CheckJson {
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

/// One boolean check; the threshold is the expected truth value.
#[derive(Serialize)]
pub struct BoolCheckJson {
    pub value: bool,
    pub threshold: bool,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct VerifyJson {
    pub residual_max_plus: CheckJson,
    pub residual_max_minus: CheckJson,
    pub wronskian_drift: CheckJson,
    pub wronskian_value: CheckJson,
    pub interlace_ok: BoolCheckJson,
    pub orthogonality: CheckJson,
    pub node_spacing_monotone: BoolCheckJson,
    pub slope_growth: BoolCheckJson,
    pub all_pass: bool,
}

impl VerifyJson {
    pub fn from_report(report: &bottomless_core::verify::VerificationReport) -> Self {
        let t = report.thresholds;
        let num = |value: f64, threshold: f64| CheckJson {
            value,
            threshold,
            pass: value <= threshold,
        };
        let flag = |value: bool| BoolCheckJson {
            value,
            threshold: true,
            pass: value,
        };
        VerifyJson {
            residual_max_plus: num(report.residual_max_plus, t.residual_max),
            residual_max_minus: num(report.residual_max_minus, t.residual_max),
            wronskian_drift: num(report.wronskian_drift, t.wronskian_drift),
            wronskian_value: CheckJson {
                value: report.wronskian_value,
                threshold: t.wronskian_value_rel,
                pass: report.wronskian_value_ok(),
            },
            interlace_ok: flag(report.interlace_ok),
            orthogonality: num(report.orthogonality, t.orthogonality),
            node_spacing_monotone: flag(report.node_spacing_monotone),
            slope_growth: flag(report.slope_growth),
            all_pass: report.all_pass(),
        }
    }

    /// Flat CSV rendering: `check,value,threshold,pass` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,value,threshold,pass\n");
        let mut num = |name: &str, c: &CheckJson| {
            out.push_str(&format!(
                "{name},{},{},{}\n",
                fmt_f64(c.value),
                fmt_f64(c.threshold),
                c.pass
            ));
        };
        num("residual_max_plus", &self.residual_max_plus);
        num("residual_max_minus", &self.residual_max_minus);
        num("wronskian_drift", &self.wronskian_drift);
        num("wronskian_value", &self.wronskian_value);
        num("orthogonality", &self.orthogonality);
        let mut flag = |name: &str, c: &BoolCheckJson| {
            out.push_str(&format!("{name},{},{},{}\n", c.value, c.threshold, c.pass));
        };
        flag("interlace_ok", &self.interlace_ok);
        flag("node_spacing_monotone", &self.node_spacing_monotone);
        flag("slope_growth", &self.slope_growth);
        out.push_str(&format!("all_pass,{},true,{}\n", self.all_pass, self.all_pass));
        out
    }
}

#[derive(Serialize)]
pub struct WellThresholdsJson {
    pub well_formation_gamma_sq: f64,
    pub placement_gamma_sq: f64,
}

#[derive(Serialize)]
pub struct WellJson {
    pub regime: String,
    pub gamma_sq: f64,
    pub z: Option<f64>,
    pub x_max_neg: Option<f64>,
    pub x_max_pos: Option<f64>,
    pub barrier_height_rel: Option<f64>,
    pub thresholds: WellThresholdsJson,
}

impl WellJson {
    pub fn from_report(gamma_sq: f64, r: &bottomless_core::wellscape::WellReport) -> Self {
        WellJson {
            regime: r.regime.as_str().to_string(),
            gamma_sq,
            z: r.z_root,
            x_max_neg: r.x_maxima.map(|m| m.0),
            x_max_pos: r.x_maxima.map(|m| m.1),
            barrier_height_rel: r.barrier_height_rel,
            thresholds: WellThresholdsJson {
                well_formation_gamma_sq: r.thresholds.well_formation_gamma_sq,
                placement_gamma_sq: r.thresholds.placement_gamma_sq,
            },
        }
    }
}

/// Sweep CSV row: `gamma_sq,regime,z,x_max,barrier` with empty fields for
/// absent values.
pub fn sweep_csv(rows: &[(f64, bottomless_core::wellscape::WellReport)]) -> String {
    let mut out = String::from("gamma_sq,regime,z,x_max,barrier\n");
    for (g2, r) in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_f64(*g2),
            r.regime.as_str(),
            fmt_opt(r.z_root),
            fmt_opt(r.x_maxima.map(|m| m.1)),
            fmt_opt(r.barrier_height_rel),
        ));
    }
    out
}

#[derive(Serialize)]
pub struct SpectrumJson {
    pub eigenvalues: Vec<f64>,
    pub endpoint_residuals: Vec<f64>,
    pub splitting: Option<f64>,
    pub empty: bool,
}

#[derive(Serialize)]
pub struct ConstructJson {
    pub family: String,
    pub energy: f64,
    pub wronskian_const: f64,
    pub x: Vec<f64>,
    pub v: Vec<f64>,
    pub psi_plus: Vec<f64>,
    pub psi_minus: Vec<f64>,
}
