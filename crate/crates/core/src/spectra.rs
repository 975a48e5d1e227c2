//! Independent eigensolver: Numerov integration with parity shooting on a
//! hard-wall box [-L, L].
//!
//! The even potential decouples the parities, so integration runs from
//! x = 0 to L only, with Dirichlet psi(L) = 0 as the eigenvalue condition.
//! Nothing here evaluates the f-cos-g ansatz: agreement with the analytic
//! pair energies is evidence from an algorithm that never saw the
//! construction.
//!
//! Determinism contract for golden traces: the Even start is the
//! parity-reflected Numerov relation psi(h) = (1 + 5h²Q(0)/12) / (1 - h²Q(h)/12),
//! the Odd start is the Taylor seed psi(h) = h, and the requested step is
//! rounded so that an integer number of steps lands exactly on L.

use crate::error::{Error, Result};
use crate::profiles::Profile;
use crate::quad;
use crate::rootfind;

/// Steps-per-wavelength bound: h·sqrt(max|E - V|) must stay below 2 pi / 20.
pub const RESOLUTION_LIMIT: f64 = std::f64::consts::TAU / 20.0;

/// |psi| threshold that triggers a rescale of the running solution.
const RESCALE_THRESHOLD: f64 = 1e250;
/// Rescales allowed per integration before reporting overflow.
const RESCALE_CAP: usize = 64;
/// Energy-scan intervals used to bracket eigenvalues inside a window.
const SCAN_INTERVALS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// psi(0) = 1, psi'(0) = 0.
    Even,
    /// psi(0) = 0, first-step seed psi(h) = h.
    Odd,
}

/// A truncated-line problem: potential, hard walls at ±L, step, parity.
#[derive(Debug, Clone)]
pub struct BoxProblem<F: Fn(f64) -> f64> {
    pub potential: F,
    pub half_width: f64,
    pub step: f64,
    pub parity: Parity,
}

impl<F: Fn(f64) -> f64> BoxProblem<F> {
    pub fn new(potential: F, half_width: f64, step: f64, parity: Parity) -> Result<Self> {
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "half_width",
                requirement: "a strictly positive finite real",
                value: half_width,
            });
        }
        if !(step > 0.0 && step < half_width / 4.0) {
            return Err(Error::InvalidParameter {
                name: "step",
                requirement: "positive and at most half_width/4",
                value: step,
            });
        }
        Ok(BoxProblem {
            potential,
            half_width,
            step,
            parity,
        })
    }

    /// Steps from 0 to L; the effective step divides L exactly.
    pub fn n_steps(&self) -> usize {
        (self.half_width / self.step).round().max(4.0) as usize
    }

    pub fn effective_step(&self) -> f64 {
        self.half_width / self.n_steps() as f64
    }

    fn potential_samples(&self) -> Vec<f64> {
        let n = self.n_steps();
        let h = self.effective_step();
        (0..=n).map(|i| (self.potential)(i as f64 * h)).collect()
    }
}

/// One shooting integration at fixed energy.
#[derive(Debug, Clone)]
pub struct Shot {
    /// psi at the wall, in the same (possibly rescaled) units as the trace.
    pub psi_at_wall: f64,
    /// psi sampled from x = 0 to L inclusive.
    pub psi: Vec<f64>,
    pub rescale_count: usize,
}

/// Numerov recurrence for psi'' = Q psi with Q = V - E, returning the wall
/// value. The whole trace is rescaled together whenever the solution grows
/// past the overflow threshold, so ratios and signs stay meaningful.
fn shoot(v: &[f64], h: f64, parity: Parity, energy: f64, want_trace: bool) -> Result<Shot> {
    let n = v.len() - 1;
    let k2_max = v
        .iter()
        .map(|&vi| (energy - vi).abs())
        .fold(0.0, f64::max);
    if h * k2_max.sqrt() > RESOLUTION_LIMIT {
        return Err(Error::ResolutionTooCoarse {
            step: h,
            k_squared_max: k2_max,
            limit: RESOLUTION_LIMIT,
        });
    }

    let g = h * h / 12.0;
    let q = |i: usize| v[i] - energy;

    let y0 = match parity {
        Parity::Even => 1.0,
        Parity::Odd => 0.0,
    };
    let y1 = match parity {
        Parity::Even => (1.0 + 5.0 * g * q(0)) * y0 / (1.0 - g * q(1)),
        Parity::Odd => h,
    };

    let mut trace = if want_trace {
        let mut t = Vec::with_capacity(n + 1);
        t.push(y0);
        t.push(y1);
        Some(t)
    } else {
        None
    };

    let mut rescale_count = 0usize;
    let mut prev = y0;
    let mut cur = y1;
    for i in 1..n {
        let next =
            ((2.0 + 10.0 * g * q(i)) * cur - (1.0 - g * q(i - 1)) * prev) / (1.0 - g * q(i + 1));
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_THRESHOLD {
            rescale_count += 1;
            if rescale_count > RESCALE_CAP {
                return Err(Error::Overflow {
                    rescales: rescale_count,
                    cap: RESCALE_CAP,
                });
            }
            let scale = 1.0 / cur.abs();
            prev *= scale;
            cur *= scale;
            if let Some(t) = trace.as_mut() {
                for y in t.iter_mut() {
                    *y *= scale;
                }
            }
        }
        if let Some(t) = trace.as_mut() {
            t.push(cur);
        }
    }

    Ok(Shot {
        psi_at_wall: cur,
        psi: trace.unwrap_or_default(),
        rescale_count,
    })
}

/// Integrate psi'' = (V - E) psi from the origin to the wall with parity
/// initial data, keeping the trace.
pub fn numerov_integrate<F: Fn(f64) -> f64>(prob: &BoxProblem<F>, energy: f64) -> Result<Shot> {
    let v = prob.potential_samples();
    shoot(&v, prob.effective_step(), prob.parity, energy, true)
}

/// Interior sign changes of the shot at `energy`. The node count increases
/// by one per eigenvalue passed, which makes two trial integrations enough
/// to estimate the local level spacing.
pub fn count_nodes<F: Fn(f64) -> f64>(prob: &BoxProblem<F>, energy: f64) -> Result<usize> {
    let shot = numerov_integrate(prob, energy)?;
    let mut nodes = 0;
    let mut prev = shot.psi[0];
    for &y in shot.psi.iter().skip(1) {
        if prev != 0.0 && y != 0.0 && prev.signum() != y.signum() {
            nodes += 1;
        }
        if y != 0.0 {
            prev = y;
        }
    }
    Ok(nodes)
}

/// Eigenvalues found inside a search window.
#[derive(Debug, Clone)]
pub struct SpectrumResult {
    /// Sorted eigenvalues; empty when no wall-value sign change was bracketed.
    pub eigenvalues: Vec<f64>,
    /// |psi(L)| / max |psi| re-evaluated at each accepted eigenvalue.
    pub endpoint_residuals: Vec<f64>,
    /// |E_even - E_odd| for the pair nearest the reference energy;
    /// filled by paired runs.
    pub splitting: Option<f64>,
}

impl SpectrumResult {
    /// True when the window scan found no sign change at all.
    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }
}

/// Scan psi(L; E) across the window and bisect every sign change down to
/// `tol_e`. An empty result (no sign change anywhere) is not an error;
/// callers see it through [`SpectrumResult::is_empty`].
pub fn eigen_bisect<F: Fn(f64) -> f64>(
    prob: &BoxProblem<F>,
    window: (f64, f64),
    tol_e: f64,
) -> Result<SpectrumResult> {
    let (e_lo, e_hi) = window;
    if !(e_lo < e_hi) {
        return Err(Error::InvalidGrid(format!(
            "energy window [{e_lo}, {e_hi}] must be ordered"
        )));
    }
    if !(tol_e > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tol_e",
            requirement: "strictly positive",
            value: tol_e,
        });
    }

    let v = prob.potential_samples();
    let h = prob.effective_step();
    // The resolution bound is monotone in |E - V|; checking both window ends
    // covers every energy in between.
    shoot(&v, h, prob.parity, e_lo, false)?;
    shoot(&v, h, prob.parity, e_hi, false)?;

    let wall = |e: f64| -> Result<f64> { Ok(shoot(&v, h, prob.parity, e, false)?.psi_at_wall) };

    let mut eigenvalues = Vec::new();
    let de = (e_hi - e_lo) / SCAN_INTERVALS as f64;
    let mut prev_e = e_lo;
    let mut prev_w = wall(prev_e)?;
    for i in 1..=SCAN_INTERVALS {
        let e = e_lo + de * i as f64;
        let w = wall(e)?;
        if prev_w == 0.0 {
            eigenvalues.push(prev_e);
        } else if w != 0.0 && prev_w.signum() != w.signum() {
            eigenvalues.push(rootfind::bisect_fallible(&wall, prev_e, e, tol_e)?);
        }
        prev_e = e;
        prev_w = w;
    }
    if prev_w == 0.0 {
        eigenvalues.push(prev_e);
    }
    eigenvalues.sort_by(f64::total_cmp);

    let mut endpoint_residuals = Vec::with_capacity(eigenvalues.len());
    for &e in &eigenvalues {
        let shot = shoot(&v, h, prob.parity, e, true)?;
        let max = shot.psi.iter().map(|y| y.abs()).fold(0.0, f64::max);
        endpoint_residuals.push(shot.psi_at_wall.abs() / max);
    }

    Ok(SpectrumResult {
        eigenvalues,
        endpoint_residuals,
        splitting: None,
    })
}

/// Run both parities over the same window and measure the near-degeneracy:
/// splitting = |E_even - E_odd| for the eigenvalue of each parity closest
/// to `e_ref`. Eigenvalues of both parities come back merged and sorted.
pub fn paired_spectrum<F: Fn(f64) -> f64>(
    potential: F,
    half_width: f64,
    step: f64,
    window: (f64, f64),
    tol_e: f64,
    e_ref: f64,
) -> Result<SpectrumResult> {
    let even = eigen_bisect(
        &BoxProblem::new(&potential, half_width, step, Parity::Even)?,
        window,
        tol_e,
    )?;
    let odd = eigen_bisect(
        &BoxProblem::new(&potential, half_width, step, Parity::Odd)?,
        window,
        tol_e,
    )?;

    let nearest = |r: &SpectrumResult| -> Option<f64> {
        r.eigenvalues
            .iter()
            .copied()
            .min_by(|a, b| (a - e_ref).abs().total_cmp(&(b - e_ref).abs()))
    };
    let splitting = match (nearest(&even), nearest(&odd)) {
        (Some(ee), Some(eo)) => Some((ee - eo).abs()),
        _ => None,
    };

    let mut eigenvalues = even.eigenvalues;
    let mut endpoint_residuals = even.endpoint_residuals;
    let mut tail: Vec<(f64, f64)> = odd
        .eigenvalues
        .into_iter()
        .zip(odd.endpoint_residuals)
        .collect();
    tail.sort_by(|a, b| a.0.total_cmp(&b.0));
    for (e, r) in tail {
        let pos = eigenvalues.partition_point(|&x| x < e);
        eigenvalues.insert(pos, e);
        endpoint_residuals.insert(pos, r);
    }

    Ok(SpectrumResult {
        eigenvalues,
        endpoint_residuals,
        splitting,
    })
}

/// One row of the gamma -> 0 collapse study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollapseRow {
    pub gamma: f64,
    /// r(gamma) = ∫ psi_minus² dx / (B² ∫ f² dx) over [-X, X].
    pub weight_ratio: f64,
}

#[derive(Debug, Clone)]
pub struct CollapseStudy {
    pub rows: Vec<CollapseRow>,
    /// Least-squares slope of log r against log gamma; 2 when the odd state
    /// shrinks quadratically out of any fixed window.
    pub slope: f64,
}

/// Windowed weight of the odd state against the envelope for each gamma,
/// with the log-log slope fit. The B² normalization cancels: the ratio is
/// ∫ f² sin²(gamma·u) / ∫ f², with u the unit phase.
pub fn gamma_collapse_study(
    p: &Profile,
    gammas: &[f64],
    window_x: f64,
) -> Result<CollapseStudy> {
    if gammas.len() < 2 {
        return Err(Error::InvalidGrid(
            "collapse study needs at least two gammas".into(),
        ));
    }
    for w in gammas.windows(2) {
        if !(w[1] < w[0]) {
            return Err(Error::InvalidGrid(
                "gammas must be strictly decreasing".into(),
            ));
        }
    }
    if !(gammas[gammas.len() - 1] > 0.0) {
        return Err(Error::InvalidParameter {
            name: "gamma",
            requirement: "strictly positive",
            value: gammas[gammas.len() - 1],
        });
    }
    if !(window_x > 0.0) {
        return Err(Error::InvalidParameter {
            name: "window_x",
            requirement: "strictly positive",
            value: window_x,
        });
    }
    if let Some((_, hi)) = p.domain() {
        if window_x > hi {
            return Err(Error::OutOfDomain {
                x: window_x,
                lo: -hi,
                hi,
            });
        }
    }

    // Dense half-range grid; evenness folds [-X, X] onto [0, X].
    const CELLS: usize = 8192;
    let h = window_x / CELLS as f64;
    let xs: Vec<f64> = (0..=CELLS).map(|i| i as f64 * h).collect();
    let f2: Vec<f64> = xs
        .iter()
        .map(|&x| {
            let f = p.eval(x).f;
            f * f
        })
        .collect();

    let unit: Vec<f64> = if p.has_exact_phase() {
        xs.iter()
            .map(|&x| p.unit_phase_exact(x).expect("closed form is per-family"))
            .collect()
    } else {
        let mut acc = 0.0;
        let mut u = Vec::with_capacity(xs.len());
        u.push(0.0);
        for w in xs.windows(2) {
            let q = quad::integrate(
                |t: f64| {
                    let f = p.eval(t).f;
                    1.0 / (f * f)
                },
                w[0],
                w[1],
                1e-13,
            )?;
            acc += q.value;
            u.push(acc);
        }
        u
    };

    let envelope_weight = quad::simpson_uniform(&f2, h);
    let mut rows = Vec::with_capacity(gammas.len());
    for &gamma in gammas {
        let integrand: Vec<f64> = f2
            .iter()
            .zip(&unit)
            .map(|(&f2, &u)| {
                let s = (gamma * u).sin();
                f2 * s * s
            })
            .collect();
        let odd_weight = quad::simpson_uniform(&integrand, h);
        rows.push(CollapseRow {
            gamma,
            weight_ratio: odd_weight / envelope_weight,
        });
    }

    // Least-squares slope of ln r on ln gamma.
    let n = rows.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for row in &rows {
        let lx = row.gamma.ln();
        let ly = row.weight_ratio.ln();
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);

    Ok(CollapseStudy { rows, slope })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    const KK_A1: f64 = 1.0 / 144.0;

    /// Literal sech-power potential for nu = 1, A1 = 1/144 (energy -1/4).
    fn kk_potential(x: f64) -> f64 {
        let sech = 1.0 / x.cosh();
        -(KK_A1 * x.cosh() * x.cosh() + 0.75 * sech * sech)
    }

    #[test]
    fn free_box_even_ground_state() {
        // V = 0, L = pi: psi = cos(x/2) at E = 1/4 satisfies the wall exactly.
        let prob = BoxProblem::new(|_| 0.0, PI, PI / 2000.0, Parity::Even).unwrap();
        let shot = numerov_integrate(&prob, 0.25).unwrap();
        // Wall value at the exact eigenvalue is rounding noise: the once-
        // rounded recurrence coefficients shift the discrete phase by
        // ~N eps/(kh), about 1e-10 at this resolution.
        assert!(shot.psi_at_wall.abs() < 5e-9, "{}", shot.psi_at_wall);
        assert_eq!(shot.rescale_count, 0);
        // the trace is the cosine to discretization accuracy
        let h = prob.effective_step();
        for (i, y) in shot.psi.iter().enumerate().step_by(100) {
            assert_abs_diff_eq!(*y, (i as f64 * h / 2.0).cos(), epsilon = 1e-9);
        }
    }

    #[test]
    fn free_box_odd_state() {
        // psi = sin(x) at E = 1 vanishes at L = pi; the h seed only rescales.
        let prob = BoxProblem::new(|_| 0.0, PI, PI / 2000.0, Parity::Odd).unwrap();
        let shot = numerov_integrate(&prob, 1.0).unwrap();
        let max = shot.psi.iter().map(|y| y.abs()).fold(0.0, f64::max);
        assert!(shot.psi_at_wall.abs() / max < 5e-9);
    }

    #[test]
    fn free_box_even_spectrum() {
        // (k + 1/2)² for k = 0, 1 inside [0.1, 3].
        let prob = BoxProblem::new(|_| 0.0, PI, PI / 2000.0, Parity::Even).unwrap();
        let result = eigen_bisect(&prob, (0.1, 3.0), 1e-10).unwrap();
        assert_eq!(result.eigenvalues.len(), 2);
        assert_abs_diff_eq!(result.eigenvalues[0], 0.25, epsilon = 1e-8);
        assert_abs_diff_eq!(result.eigenvalues[1], 2.25, epsilon = 1e-8);
        for r in &result.endpoint_residuals {
            assert!(*r < 1e-6);
        }
    }

    #[test]
    fn numerov_is_globally_fourth_order() {
        // Halve h on the free-box eigenstate: the wall error drops ~2⁴.
        let err_at = |h: f64| {
            let prob = BoxProblem::new(|_| 0.0, PI, h, Parity::Even).unwrap();
            numerov_integrate(&prob, 0.25).unwrap().psi_at_wall.abs()
        };
        let ratio = err_at(PI / 40.0) / err_at(PI / 80.0);
        assert!(
            (12.0..=20.0).contains(&ratio),
            "h-halving error ratio {ratio} outside [12, 20]"
        );
    }

    #[test]
    fn resolution_guard_rejects_coarse_steps() {
        // k = sqrt(900) = 30 needs h <= 2pi/20/30 ~ 0.0105.
        let prob = BoxProblem::new(|_| -900.0, 10.0, 0.05, Parity::Even).unwrap();
        assert!(matches!(
            numerov_integrate(&prob, 0.0),
            Err(Error::ResolutionTooCoarse { .. })
        ));
    }

    #[test]
    fn growth_in_forbidden_region_rescales_then_caps() {
        // V = 1000, E = 0: psi ~ exp(31.6 x). Moderate L rescales and
        // succeeds; extreme L exceeds the cap.
        let prob = BoxProblem::new(|_| 1000.0, 40.0, 0.009, Parity::Even).unwrap();
        let shot = numerov_integrate(&prob, 0.0).unwrap();
        assert!(shot.rescale_count >= 1);
        assert!(shot.psi_at_wall.is_finite());

        let prob = BoxProblem::new(|_| 1000.0, 1200.0, 0.009, Parity::Even).unwrap();
        assert!(matches!(
            numerov_integrate(&prob, 0.0),
            Err(Error::Overflow { .. })
        ));
    }

    #[test]
    fn koley_kar_wall_lands_on_exact_node() {
        // L = asinh(6 pi) is a node of the exact even state at E = -1/4.
        let l = (6.0 * PI).asinh();
        let prob = BoxProblem::new(kk_potential, l, 1e-4, Parity::Even).unwrap();
        let shot = numerov_integrate(&prob, -0.25).unwrap();
        let max = shot.psi.iter().map(|y| y.abs()).fold(0.0, f64::max);
        assert!(
            shot.psi_at_wall.abs() / max <= 1e-6,
            "wall residual {}",
            shot.psi_at_wall.abs() / max
        );
    }

    #[test]
    fn koley_kar_energy_recovered_blind() {
        let l = (6.0 * PI).asinh();
        let prob = BoxProblem::new(kk_potential, l, 1e-3, Parity::Even).unwrap();
        let result = eigen_bisect(&prob, (-0.3, -0.2), 1e-8).unwrap();
        assert_eq!(result.eigenvalues.len(), 1);
        assert_abs_diff_eq!(result.eigenvalues[0], -0.25, epsilon = 1e-4);
    }

    #[test]
    fn node_placement_identity_even_and_odd() {
        // Walls on psi_plus nodes (sinh L = 12(m + 1/2) pi) make -1/4 an
        // exact Even eigenvalue; walls on psi_minus nodes (sinh L = 12 m pi)
        // make it an exact Odd one.
        for m in 1..=3 {
            let l = (12.0 * (m as f64 + 0.5) * PI).asinh();
            let prob = BoxProblem::new(kk_potential, l, 2e-3, Parity::Even).unwrap();
            let result = eigen_bisect(&prob, (-0.3, -0.2), 1e-9).unwrap();
            assert_eq!(result.eigenvalues.len(), 1, "even m = {m}");
            assert_abs_diff_eq!(result.eigenvalues[0], -0.25, epsilon = 1e-4);

            let l = (12.0 * m as f64 * PI).asinh();
            let prob = BoxProblem::new(kk_potential, l, 2e-3, Parity::Odd).unwrap();
            let result = eigen_bisect(&prob, (-0.3, -0.2), 1e-9).unwrap();
            assert_eq!(result.eigenvalues.len(), 1, "odd m = {m}");
            assert_abs_diff_eq!(result.eigenvalues[0], -0.25, epsilon = 1e-4);
        }
    }

    #[test]
    fn cutoff_splitting_shrinks_with_next_node() {
        // At a psi_plus node wall the even energy is exact while the odd
        // neighbour is displaced; pushing the wall to the next node shrinks
        // the displacement.
        let window = (-0.4, 2.0);
        let l1 = (6.0 * PI).asinh();
        let s1 = paired_spectrum(kk_potential, l1, 1e-3, window, 1e-9, -0.25).unwrap();
        let l2 = (18.0 * PI).asinh();
        let s2 = paired_spectrum(kk_potential, l2, 1e-3, window, 1e-9, -0.25).unwrap();
        let (sp1, sp2) = (s1.splitting.unwrap(), s2.splitting.unwrap());
        assert!(sp1 > 1e-6, "splitting at L1 unexpectedly degenerate: {sp1}");
        assert!(sp2 > 0.0);
        assert!(
            sp2 < sp1,
            "splitting did not shrink: {sp1} -> {sp2} (L {l1} -> {l2})"
        );
    }

    #[test]
    fn eigenvalue_count_grows_with_half_width() {
        // Bottomless Lorentzian well (a = 1, gamma = 1, V(0) = 0): more
        // states drop below E = 0 as the walls move out.
        let v = |x: f64| crate::wellscape::lorentz_v_minus_e(1.0, 1.0, x) + 2.0;
        let count = |l: f64| {
            let prob = BoxProblem::new(v, l, 4e-3, Parity::Even).unwrap();
            eigen_bisect(&prob, (-40.0, 0.0), 1e-8)
                .unwrap()
                .eigenvalues
                .len()
        };
        let (c3, c5) = (count(3.0), count(5.0));
        assert!(
            c5 > c3,
            "even-state count did not grow: {c3} at L=3 vs {c5} at L=5"
        );
    }

    #[test]
    fn empty_window_is_flagged_not_fatal() {
        // Free box even spectrum has nothing in (0.3, 2.2) x ... wait: next
        // eigenvalue after 0.25 is 2.25, so (0.3, 2.2) is empty.
        let prob = BoxProblem::new(|_| 0.0, PI, PI / 2000.0, Parity::Even).unwrap();
        let result = eigen_bisect(&prob, (0.3, 2.2), 1e-9).unwrap();
        assert!(result.is_empty());
        assert!(result.splitting.is_none());
    }

    #[test]
    fn node_count_steps_up_across_eigenvalues() {
        // Free box even states at 0.25, 2.25, 6.25 carry 0, 1, 2 interior
        // nodes on (0, L); counting between them sees the staircase.
        let prob = BoxProblem::new(|_| 0.0, PI, PI / 500.0, Parity::Even).unwrap();
        assert_eq!(count_nodes(&prob, 0.1).unwrap(), 0);
        assert_eq!(count_nodes(&prob, 1.0).unwrap(), 1);
        assert_eq!(count_nodes(&prob, 3.0).unwrap(), 2);
    }

    #[test]
    fn collapse_slope_is_two_for_both_families() {
        let gammas = [1e-2, 1e-3, 1e-4];
        let lorentz = Profile::lorentz_sqrt(1.0).unwrap();
        let study = gamma_collapse_study(&lorentz, &gammas, 2.0).unwrap();
        assert!((study.slope - 2.0).abs() <= 0.05, "slope {}", study.slope);
        // weight ratios fall ~quadratically
        assert!(study.rows[0].weight_ratio > study.rows[1].weight_ratio);

        let sech = Profile::sech_power(1.0).unwrap();
        let study = gamma_collapse_study(&sech, &gammas, 2.0).unwrap();
        assert!((study.slope - 2.0).abs() <= 0.05, "slope {}", study.slope);
    }

    #[test]
    fn collapse_weight_vanishes_with_window() {
        let p = Profile::lorentz_sqrt(1.0).unwrap();
        let wide = gamma_collapse_study(&p, &[1e-2, 1e-3], 2.0).unwrap();
        let narrow = gamma_collapse_study(&p, &[1e-2, 1e-3], 0.1).unwrap();
        assert!(narrow.rows[0].weight_ratio < wide.rows[0].weight_ratio * 1e-2);
    }

    #[test]
    fn collapse_rejects_bad_gamma_lists() {
        let p = Profile::lorentz_sqrt(1.0).unwrap();
        assert!(gamma_collapse_study(&p, &[1e-3], 2.0).is_err());
        assert!(gamma_collapse_study(&p, &[1e-4, 1e-3], 2.0).is_err());
        assert!(gamma_collapse_study(&p, &[1e-2, 0.0], 2.0).is_err());
    }

    #[test]
    fn invalid_box_parameters_rejected() {
        assert!(BoxProblem::new(|_| 0.0, -1.0, 0.01, Parity::Even).is_err());
        assert!(BoxProblem::new(|_| 0.0, 1.0, 0.5, Parity::Even).is_err());
        let prob = BoxProblem::new(|_| 0.0, PI, 0.01, Parity::Even).unwrap();
        assert!(eigen_bisect(&prob, (3.0, 1.0), 1e-9).is_err());
        assert!(eigen_bisect(&prob, (0.1, 3.0), 0.0).is_err());
    }
}
