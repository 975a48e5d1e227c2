//! Builds the phase function g, the potential V - E, and the degenerate
//! parity pair (psi_plus, psi_minus) from a profile and a pair configuration.
//!
//! The construction: psi_plus = f cos g and psi_minus = B f sin g solve the
//! stationary equation at one common energy whenever g' = gamma / f², which
//! makes V - E = f''/f - gamma²/f⁴. The phase is anchored at g(0) = 0 so g
//! is odd and the two states carry definite parity. Their Wronskian
//! (psi_minus psi_plus' - psi_plus psi_minus') is the constant -B·gamma.

use crate::error::{Error, Result};
use crate::profiles::Profile;
use crate::quad;

/// Absolute phase tolerance used when a pair is built without a closed form.
pub const PHASE_ABS_TOL: f64 = 1e-11;

/// Which energy the reconstructed potential is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyRef {
    /// Shift so that V(0) = 0; then E = -(f''(0)/f(0) - gamma²/f⁴(0)).
    PotentialZeroAtOrigin,
    /// Keep the family's natural form: the f''/f tail limit is absorbed
    /// into E, so E = -lim f''/f. For sech-power envelopes this is the
    /// literal bottomless-potential normalization with E = -nu²/4; for the
    /// Lorentzian it makes the gamma = 0 potential vanish at infinity.
    PotentialAsGiven,
}

/// Parameters that fix a degenerate pair on top of a profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairConfig {
    /// gamma >= 0; gamma = 0 is the degeneracy-loss limit (the odd state
    /// vanishes identically).
    pub gamma: f64,
    /// Nonzero scale of the odd state. Only rescales psi_minus and W.
    pub b_coeff: f64,
    pub energy_ref: EnergyRef,
}

impl PairConfig {
    pub fn new(gamma: f64, b_coeff: f64, energy_ref: EnergyRef) -> Result<Self> {
        let cfg = PairConfig {
            gamma,
            b_coeff,
            energy_ref,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "gamma",
                requirement: "a finite real >= 0",
                value: self.gamma,
            });
        }
        if !(self.b_coeff != 0.0 && self.b_coeff.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "b_coeff",
                requirement: "a finite nonzero real",
                value: self.b_coeff,
            });
        }
        Ok(())
    }
}

/// Uniform symmetric grid specification. `n_points` must be odd so x = 0
/// is a grid point; the grid is built as (i - mid)·h, which makes it
/// bit-exactly symmetric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x_max: f64,
    pub n_points: usize,
}

impl GridSpec {
    pub fn new(x_max: f64, n_points: usize) -> Result<Self> {
        let spec = GridSpec { x_max, n_points };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x_max > 0.0 && self.x_max.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "x_max",
                requirement: "a strictly positive finite real",
                value: self.x_max,
            });
        }
        if self.n_points < 3 {
            return Err(Error::InvalidGrid(format!(
                "n_points must be >= 3, got {}",
                self.n_points
            )));
        }
        if self.n_points.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "n_points must be odd so that x = 0 is a grid point, got {}",
                self.n_points
            )));
        }
        Ok(())
    }

    pub fn step(&self) -> f64 {
        self.x_max / ((self.n_points / 2) as f64)
    }

    pub fn build(&self) -> Vec<f64> {
        let mid = self.n_points / 2;
        let h = self.step();
        (0..self.n_points)
            .map(|i| (i as f64 - mid as f64) * h)
            .collect()
    }
}

/// A sampled degenerate pair: grid, potential (relative to E), both states,
/// the energy under the chosen reference, and the predicted Wronskian.
#[derive(Debug, Clone)]
pub struct DegeneratePair {
    pub profile: Profile,
    pub config: PairConfig,
    pub grid: Vec<f64>,
    /// g(x) at the grid points; odd by construction.
    pub phase: Vec<f64>,
    /// V(x) - E = f''/f - gamma²/f⁴.
    pub v_minus_e: Vec<f64>,
    pub energy: f64,
    pub psi_plus: Vec<f64>,
    pub psi_minus: Vec<f64>,
    /// -B·gamma under the sign conventions above.
    pub wronskian_const: f64,
}

/// Sampled potential curve, used for the gamma = 0 limit.
#[derive(Debug, Clone)]
pub struct PotentialCurve {
    pub grid: Vec<f64>,
    pub v: Vec<f64>,
}

/// Coefficient of the sech² term in the sech-power potential family.
pub fn koley_kar_a2(nu: f64) -> f64 {
    (nu / 2.0) * (nu / 2.0 + 1.0)
}

fn check_domain(p: &Profile, x_needed: f64) -> Result<()> {
    if let Some((lo, hi)) = p.domain() {
        if x_needed > hi || -x_needed < lo {
            return Err(Error::OutOfDomain { x: x_needed, lo, hi });
        }
    }
    Ok(())
}

/// The unit phase u(x) = ∫₀ˣ dt/f²(t) by adaptive quadrature, using odd
/// symmetry for negative x.
fn unit_phase_by_quadrature(p: &Profile, x: f64, abs_tol: f64) -> Result<f64> {
    if x == 0.0 {
        return Ok(0.0);
    }
    let xa = x.abs();
    let integrand = |t: f64| {
        let f = p.eval(t).f;
        1.0 / (f * f)
    };
    let q = quad::integrate(integrand, 0.0, xa, abs_tol)?;
    Ok(if x < 0.0 { -q.value } else { q.value })
}

/// g(x) = gamma ∫₀ˣ dt/f²(t), the phase of the pair, to absolute
/// tolerance `tol`. Uses the family's closed form when it has one.
///
/// The lower limit is pinned at 0, so g is odd and the pair has definite
/// parity.
pub fn phase(p: &Profile, cfg: &PairConfig, x: f64, tol: f64) -> Result<f64> {
    cfg.validate()?;
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tol",
            requirement: "strictly positive",
            value: tol,
        });
    }
    check_domain(p, x.abs())?;
    if cfg.gamma == 0.0 {
        return Ok(0.0);
    }
    if let Some(u) = p.unit_phase_exact(x) {
        return Ok(cfg.gamma * u);
    }
    Ok(cfg.gamma * unit_phase_by_quadrature(p, x, tol / cfg.gamma)?)
}

/// Like [`phase`] but forcing the quadrature path even when a closed form
/// exists. Used to cross-check the closed forms.
pub fn phase_by_quadrature(p: &Profile, cfg: &PairConfig, x: f64, tol: f64) -> Result<f64> {
    cfg.validate()?;
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tol",
            requirement: "strictly positive",
            value: tol,
        });
    }
    check_domain(p, x.abs())?;
    if cfg.gamma == 0.0 {
        return Ok(0.0);
    }
    Ok(cfg.gamma * unit_phase_by_quadrature(p, x, tol / cfg.gamma)?)
}

/// Unit phase sampled on the non-negative half of a symmetric grid.
/// Entry k corresponds to grid index mid + k.
fn half_grid_unit_phase(p: &Profile, half: &[f64]) -> Result<Vec<f64>> {
    let mut u = Vec::with_capacity(half.len());
    u.push(0.0);
    if p.has_exact_phase() {
        for &x in &half[1..] {
            u.push(p.unit_phase_exact(x).expect("closed form is per-family"));
        }
        return Ok(u);
    }
    let cells = (half.len() - 1).max(1);
    let cell_tol = (PHASE_ABS_TOL / cells as f64).max(1e-15);
    let integrand = |t: f64| {
        let f = p.eval(t).f;
        1.0 / (f * f)
    };
    let mut acc = 0.0;
    for w in half.windows(2) {
        let q = quad::integrate_with_limit(&integrand, w[0], w[1], cell_tol, 128)?;
        acc += q.value;
        u.push(acc);
    }
    Ok(u)
}

/// Build the sampled degenerate pair for `p` under `cfg` on the grid.
///
/// psi_plus = f cos g and psi_minus = B f sin g are evaluated on the
/// non-negative half and mirrored, so the parity identities hold bit-exactly
/// on the symmetric grid.
pub fn build_pair(p: &Profile, cfg: &PairConfig, grid_spec: &GridSpec) -> Result<DegeneratePair> {
    cfg.validate()?;
    grid_spec.validate()?;
    check_domain(p, grid_spec.x_max)?;

    let mut grid = grid_spec.build();
    let n = grid.len();
    let mid = n / 2;

    // (i - mid)·h can overshoot a tabulated domain edge by an ulp; snap it.
    if let Some((lo, hi)) = p.domain() {
        if grid[n - 1] > hi {
            grid[n - 1] = hi;
            grid[0] = lo.max(-hi);
        }
    }

    let half = &grid[mid..];
    let unit = half_grid_unit_phase(p, half)?;

    #[cfg(debug_assertions)]
    if p.has_exact_phase() && cfg.gamma > 0.0 {
        // Closed form vs quadrature spot check on the build path.
        for &k in &[unit.len() / 3, 2 * unit.len() / 3, unit.len() - 1] {
            let by_quad = unit_phase_by_quadrature(p, half[k], 1e-11)?;
            debug_assert!(
                (unit[k] - by_quad).abs() <= 1e-9 * (1.0 + unit[k].abs()),
                "closed-form phase disagrees with quadrature at x = {}: {} vs {}",
                half[k],
                unit[k],
                by_quad
            );
        }
    }

    let gamma = cfg.gamma;
    let b = cfg.b_coeff;
    let mut phase_vals = vec![0.0; n];
    let mut v_minus_e = vec![0.0; n];
    let mut psi_plus = vec![0.0; n];
    let mut psi_minus = vec![0.0; n];

    for (k, &x) in half.iter().enumerate() {
        let j = p.eval(x);
        let g = gamma * unit[k];
        let f2 = j.f * j.f;
        let v = j.ddf / j.f - gamma * gamma / (f2 * f2);
        let plus = j.f * g.cos();
        let minus = b * j.f * g.sin();

        phase_vals[mid + k] = g;
        v_minus_e[mid + k] = v;
        psi_plus[mid + k] = plus;
        psi_minus[mid + k] = minus;
        if k > 0 {
            phase_vals[mid - k] = -g;
            v_minus_e[mid - k] = v;
            psi_plus[mid - k] = plus;
            psi_minus[mid - k] = -minus;
        }
    }

    let energy = match cfg.energy_ref {
        EnergyRef::PotentialZeroAtOrigin => -v_minus_e[mid],
        EnergyRef::PotentialAsGiven => {
            -p.curvature_ratio_limit().ok_or(Error::UnsupportedLimit {
                family: p.family_name(),
            })?
        }
    };

    Ok(DegeneratePair {
        profile: p.clone(),
        config: *cfg,
        grid,
        phase: phase_vals,
        v_minus_e,
        energy,
        psi_plus,
        psi_minus,
        wronskian_const: -b * gamma,
    })
}

/// The sech-power family in its literal bottomless form:
/// V = -(A1 cosh^(2 nu) x + A2 sech² x) with A2 = (nu/2)(nu/2 + 1) and
/// E = -nu²/4. Equivalent to [`build_pair`] with gamma = sqrt(A1), B = 1,
/// and the as-given energy reference.
pub fn koley_kar_pair(nu: f64, a1: f64, grid_spec: &GridSpec) -> Result<DegeneratePair> {
    if !(a1 > 0.0 && a1.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "a1",
            requirement: "a strictly positive finite real",
            value: a1,
        });
    }
    let profile = Profile::sech_power(nu)?;
    let cfg = PairConfig::new(a1.sqrt(), 1.0, EnergyRef::PotentialAsGiven)?;
    build_pair(&profile, &cfg, grid_spec)
}

/// The gamma = 0 potential V = f''/f, shifted so V(±inf) -> 0. The profile
/// itself is then a zero-energy bound state: f'' - V f = 0 identically.
///
/// Requires a family whose f''/f has a finite limit at infinity; Gaussian
/// and tabulated profiles are rejected.
pub fn gamma_zero_potential(p: &Profile, grid_spec: &GridSpec) -> Result<PotentialCurve> {
    grid_spec.validate()?;
    check_domain(p, grid_spec.x_max)?;
    let limit = p.curvature_ratio_limit().ok_or(Error::UnsupportedLimit {
        family: p.family_name(),
    })?;
    let grid = grid_spec.build();
    let v = grid
        .iter()
        .map(|&x| {
            let j = p.eval(x);
            j.ddf / j.f - limit
        })
        .collect();
    Ok(PotentialCurve { grid, v })
}

impl DegeneratePair {
    pub fn n_points(&self) -> usize {
        self.grid.len()
    }

    pub fn step(&self) -> f64 {
        self.grid[1] - self.grid[0]
    }

    /// Phase at an arbitrary x inside the grid span, anchored on the nearest
    /// stored grid value so tabulated profiles only integrate one cell.
    pub fn phase_at(&self, x: f64) -> Result<f64> {
        let (lo, hi) = (self.grid[0], self.grid[self.grid.len() - 1]);
        if x < lo || x > hi {
            return Err(Error::OutOfDomain { x, lo, hi });
        }
        if self.config.gamma == 0.0 {
            return Ok(0.0);
        }
        if let Some(u) = self.profile.unit_phase_exact(x) {
            return Ok(self.config.gamma * u);
        }
        let h = self.step();
        let i = (((x - lo) / h).floor() as usize).min(self.grid.len() - 2);
        let x_anchor = self.grid[i];
        let integrand = |t: f64| {
            let f = self.profile.eval(t).f;
            1.0 / (f * f)
        };
        let q = quad::integrate(integrand, x_anchor, x, 1e-13)?;
        Ok(self.phase[i] + self.config.gamma * q.value)
    }

    /// Pointwise psi value away from the stored grid.
    pub fn state_at(&self, which: State, x: f64) -> Result<f64> {
        let g = self.phase_at(x)?;
        let f = self.profile.eval(x).f;
        Ok(match which {
            State::Plus => f * g.cos(),
            State::Minus => self.config.b_coeff * f * g.sin(),
        })
    }

    /// Analytic psi' using g' = gamma/f².
    pub fn state_derivative_at(&self, which: State, x: f64) -> Result<f64> {
        let g = self.phase_at(x)?;
        let j = self.profile.eval(x);
        let g_prime = self.config.gamma / (j.f * j.f);
        Ok(match which {
            State::Plus => j.df * g.cos() - j.f * g_prime * g.sin(),
            State::Minus => self.config.b_coeff * (j.df * g.sin() + j.f * g_prime * g.cos()),
        })
    }

    pub fn state_values(&self, which: State) -> &[f64] {
        match which {
            State::Plus => &self.psi_plus,
            State::Minus => &self.psi_minus,
        }
    }
}

/// Selects one member of a degenerate pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum State {
    /// The parity-even state f cos g.
    Plus,
    /// The parity-odd state B f sin g.
    Minus,
}
