//! Invariant battery for constructed pairs: Schrödinger residuals,
//! Wronskian constancy, zero interlacing, orthogonality, node spacing,
//! and node-slope growth, assembled into a machine-readable report.
//!
//! The checks read the *stored* pair arrays wherever a claim is about the
//! sampled object (residual, Wronskian scan, orthogonality), so an injected
//! fault in any array is detected; only derivatives come from the analytic
//! chain g' = gamma/f², never from numerical differentiation.

use crate::construct::{DegeneratePair, State};
use crate::error::{Error, Result};
use crate::quad;
use crate::rootfind;

/// Floor for the Wronskian drift denominator; keeps gamma = 0 well-defined.
pub const WRONSKIAN_EPS: f64 = 1e-300;

/// Pass thresholds. Defaults carry the values the battery certifies
/// against: residual 1e-8, drift 1e-10, |W(0)| match 1e-12 relative,
/// orthogonality 1e-12.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    pub residual_max: f64,
    pub wronskian_drift: f64,
    pub wronskian_value_rel: f64,
    pub orthogonality: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            residual_max: 1e-8,
            wronskian_drift: 1e-10,
            wronskian_value_rel: 1e-12,
            orthogonality: 1e-12,
        }
    }
}

/// Per-invariant results with the witness data that justified the booleans.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub residual_max_plus: f64,
    pub residual_max_minus: f64,
    pub wronskian_drift: f64,
    /// W(0), measured.
    pub wronskian_value: f64,
    /// -B·gamma, predicted.
    pub wronskian_predicted: f64,
    pub orthogonality: f64,
    pub interlace_ok: bool,
    pub node_spacing_monotone: bool,
    pub slope_growth: bool,
    pub zeros_plus: Vec<f64>,
    pub zeros_minus: Vec<f64>,
    /// Gaps between consecutive plus-state zeros beyond the onset.
    pub node_gaps_plus: Vec<f64>,
    /// |psi'| at each state's own nodes beyond the onset.
    pub slope_samples_plus: Vec<f64>,
    pub slope_samples_minus: Vec<f64>,
    /// Start of the monotone regime: last critical point of f plus one cell.
    pub onset_x: f64,
    pub thresholds: Thresholds,
}

impl VerificationReport {
    pub fn wronskian_value_ok(&self) -> bool {
        let scale = self.wronskian_predicted.abs().max(WRONSKIAN_EPS);
        (self.wronskian_value.abs() - self.wronskian_predicted.abs()).abs()
            <= self.thresholds.wronskian_value_rel * scale
    }

    pub fn all_pass(&self) -> bool {
        self.residual_max_plus <= self.thresholds.residual_max
            && self.residual_max_minus <= self.thresholds.residual_max
            && self.wronskian_drift <= self.thresholds.wronskian_drift
            && self.wronskian_value_ok()
            && self.orthogonality <= self.thresholds.orthogonality
            && self.interlace_ok
            && self.node_spacing_monotone
            && self.slope_growth
    }
}

/// Analytic second derivative of the requested state at grid index `i`:
/// psi_plus'' = (f'' - f g'²) cos g - (2 f' g' + f g'') sin g, and the
/// sin/cos-swapped form for psi_minus, with g' = gamma/f², g'' = -2 gamma f'/f³.
fn analytic_second_derivative(pair: &DegeneratePair, which: State, i: usize) -> f64 {
    let j = pair.profile.eval(pair.grid[i]);
    let gamma = pair.config.gamma;
    let g = pair.phase[i];
    let f2 = j.f * j.f;
    let g_prime = gamma / f2;
    let g_second = -2.0 * gamma * j.df / (f2 * j.f);
    let envelope = j.ddf - j.f * g_prime * g_prime;
    let cross = 2.0 * j.df * g_prime + j.f * g_second;
    match which {
        State::Plus => envelope * g.cos() - cross * g.sin(),
        State::Minus => pair.config.b_coeff * (envelope * g.sin() + cross * g.cos()),
    }
}

/// Max over the grid of |psi'' + (E - V) psi| / (1 + |psi|), with psi''
/// from the analytic chain and psi, V - E from the stored arrays.
///
/// The gamma²/f³ scale of the two cancelling terms sets the rounding floor:
/// windows where it exceeds ~1e8 cannot certify a 1e-8 residual in f64
/// (for a Gaussian envelope with gamma = 1 that bounds the usable window
/// to about |x| <= 2.4).
pub fn schrodinger_residual(pair: &DegeneratePair, which: State) -> Result<f64> {
    if pair.n_points() < 5 {
        return Err(Error::InvalidGrid(format!(
            "residual needs at least 5 grid points, got {}",
            pair.n_points()
        )));
    }
    let psi = pair.state_values(which);
    let mut worst = 0.0f64;
    for (i, (&p, &v)) in psi.iter().zip(&pair.v_minus_e).enumerate() {
        let second = analytic_second_derivative(pair, which, i);
        let r = (second - v * p).abs() / (1.0 + p.abs());
        worst = worst.max(r);
    }
    Ok(worst)
}

/// Pointwise Wronskian scan and its drift.
#[derive(Debug, Clone)]
pub struct WronskianScan {
    pub values: Vec<f64>,
    /// max |W(x) - W(0)| / max(|W(0)|, eps)
    pub drift: f64,
}

/// W(x) = psi_minus psi_plus' - psi_plus psi_minus' at every grid point,
/// with the psi values taken from the stored arrays and the derivatives
/// from the analytic chain.
pub fn wronskian_scan(pair: &DegeneratePair) -> WronskianScan {
    let gamma = pair.config.gamma;
    let b = pair.config.b_coeff;
    let n = pair.n_points();
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let j = pair.profile.eval(pair.grid[i]);
        let g = pair.phase[i];
        let g_prime = gamma / (j.f * j.f);
        let plus_prime = j.df * g.cos() - j.f * g_prime * g.sin();
        let minus_prime = b * (j.df * g.sin() + j.f * g_prime * g.cos());
        values.push(pair.psi_minus[i] * plus_prime - pair.psi_plus[i] * minus_prime);
    }
    let w0 = values[n / 2];
    let scale = w0.abs().max(WRONSKIAN_EPS);
    let drift = values
        .iter()
        .map(|w| (w - w0).abs() / scale)
        .fold(0.0, f64::max);
    WronskianScan { values, drift }
}

/// All zeros of the requested state strictly inside `window`, located by
/// sign-change bracketing on the stored grid and refined by bisection to
/// 1e-12 in x.
///
/// Exact grid zeros count as zeros. Fails with [`Error::ZeroResolution`]
/// when the stored phase advances by >= pi across a single cell, since two
/// zeros can then share a cell and sign changes alias.
pub fn find_zeros(pair: &DegeneratePair, which: State, window: (f64, f64)) -> Result<Vec<f64>> {
    const XTOL: f64 = 1e-12;
    let (lo, hi) = window;
    let (grid_lo, grid_hi) = (pair.grid[0], pair.grid[pair.n_points() - 1]);
    if !(lo < hi) || lo < grid_lo || hi > grid_hi {
        return Err(Error::InvalidGrid(format!(
            "window [{lo}, {hi}] must be ordered and inside the grid [{grid_lo}, {grid_hi}]"
        )));
    }

    let psi = pair.state_values(which);
    let mut zeros = Vec::new();
    for i in 0..pair.n_points() - 1 {
        let (xa, xb) = (pair.grid[i], pair.grid[i + 1]);
        if xb <= lo || xa >= hi {
            continue;
        }
        let advance = (pair.phase[i + 1] - pair.phase[i]).abs();
        if advance >= std::f64::consts::PI {
            return Err(Error::ZeroResolution {
                x: xa,
                phase_advance: advance,
            });
        }
        let (ya, yb) = (psi[i], psi[i + 1]);
        if ya == 0.0 {
            // An exact grid zero counts only when isolated; an identically
            // vanishing state (gamma = 0) has no zeros to report.
            let isolated = yb != 0.0 || (i > 0 && psi[i - 1] != 0.0);
            if isolated && xa > lo && xa < hi {
                zeros.push(xa);
            }
            continue;
        }
        if yb == 0.0 {
            // Recorded when its own cell comes up as the left endpoint.
            continue;
        }
        if ya.signum() != yb.signum() {
            let z = rootfind::bisect_fallible(|x| pair.state_at(which, x), xa, xb, XTOL)?;
            if z > lo && z < hi {
                zeros.push(z);
            }
        }
    }
    zeros.sort_by(f64::total_cmp);
    zeros.dedup_by(|a, b| (*a - *b).abs() < 10.0 * XTOL);
    Ok(zeros)
}

/// Strict interlacing: between consecutive zeros of either state lies
/// exactly one zero of the other. Equivalent to the merged sequence
/// alternating, with ties rejected.
pub fn check_interlacing(zeros_plus: &[f64], zeros_minus: &[f64]) -> bool {
    let mut merged: Vec<(f64, u8)> = zeros_plus
        .iter()
        .map(|&z| (z, 0u8))
        .chain(zeros_minus.iter().map(|&z| (z, 1u8)))
        .collect();
    merged.sort_by(|a, b| a.0.total_cmp(&b.0));
    for w in merged.windows(2) {
        if w[0].1 == w[1].1 || w[0].0 == w[1].0 {
            return false;
        }
    }
    true
}

/// |∫ psi_plus psi_minus dx| over the grid window by composite Simpson on
/// the stored arrays. Zero for exact parity data; a symmetry-breaking fault
/// at any point shows up directly.
pub fn orthogonality(pair: &DegeneratePair) -> f64 {
    let products: Vec<f64> = pair
        .psi_plus
        .iter()
        .zip(&pair.psi_minus)
        .map(|(p, m)| p * m)
        .collect();
    quad::simpson_uniform(&products, pair.step()).abs()
}

/// ∫_{|x| > x_from} f² dx for the pair's profile.
pub fn norm_tail(pair: &DegeneratePair, x_from: f64) -> Result<f64> {
    pair.profile.norm_tail(x_from, 1e-12)
}

/// Last positive critical point of f on the grid plus one cell; the
/// monotone node-spacing and slope-growth regimes start here. Profiles
/// that only peak at the origin give onset = h.
pub fn monotonicity_onset(pair: &DegeneratePair) -> f64 {
    let h = pair.step();
    let mid = pair.n_points() / 2;
    let mut last_critical = 0.0;
    for i in mid..pair.n_points() - 1 {
        let a = pair.profile.eval(pair.grid[i]).df;
        let b = pair.profile.eval(pair.grid[i + 1]).df;
        if a == 0.0 && pair.grid[i] > 0.0 {
            last_critical = pair.grid[i];
        } else if a.signum() != b.signum() {
            last_critical = pair.grid[i + 1];
        }
    }
    last_critical + h
}

fn strictly_increasing(samples: &[f64]) -> bool {
    samples.windows(2).all(|w| w[1] > w[0])
}

fn non_increasing(samples: &[f64]) -> bool {
    samples.windows(2).all(|w| w[1] <= w[0])
}

/// Run the full battery over the pair's grid window.
pub fn run_battery(pair: &DegeneratePair, thresholds: Thresholds) -> Result<VerificationReport> {
    let residual_max_plus = schrodinger_residual(pair, State::Plus)?;
    let residual_max_minus = schrodinger_residual(pair, State::Minus)?;
    let scan = wronskian_scan(pair);
    let wronskian_value = scan.values[pair.n_points() / 2];
    let ortho = orthogonality(pair);

    let span = (pair.grid[0], pair.grid[pair.n_points() - 1]);
    let zeros_plus = find_zeros(pair, State::Plus, span)?;
    let zeros_minus = find_zeros(pair, State::Minus, span)?;
    let interlace_ok = check_interlacing(&zeros_plus, &zeros_minus);

    let onset_x = monotonicity_onset(pair);
    let beyond: Vec<f64> = zeros_plus
        .iter()
        .copied()
        .filter(|&z| z > onset_x)
        .collect();
    let node_gaps_plus: Vec<f64> = beyond.windows(2).map(|w| w[1] - w[0]).collect();
    let node_spacing_monotone = non_increasing(&node_gaps_plus);

    let mut slope_samples_plus = Vec::with_capacity(beyond.len());
    for &z in &beyond {
        slope_samples_plus.push(pair.state_derivative_at(State::Plus, z)?.abs());
    }
    let mut slope_samples_minus = Vec::new();
    for &z in zeros_minus.iter().filter(|&&z| z > onset_x) {
        slope_samples_minus.push(pair.state_derivative_at(State::Minus, z)?.abs());
    }
    let slope_growth =
        strictly_increasing(&slope_samples_plus) && strictly_increasing(&slope_samples_minus);

    Ok(VerificationReport {
        residual_max_plus,
        residual_max_minus,
        wronskian_drift: scan.drift,
        wronskian_value,
        wronskian_predicted: pair.wronskian_const,
        orthogonality: ortho,
        interlace_ok,
        node_spacing_monotone,
        slope_growth,
        zeros_plus,
        zeros_minus,
        node_gaps_plus,
        slope_samples_plus,
        slope_samples_minus,
        onset_x,
        thresholds,
    })
}
