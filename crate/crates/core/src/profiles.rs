//! Envelope profiles f: positive, even, square-integrable functions with
//! analytic first and second derivatives.
//!
//! Every construction in this crate starts from such an f. Three analytic
//! families are built in; arbitrary user data enters through [`Profile::tabulated`],
//! which interpolates with a cubic spline and differentiates the spline
//! analytically. Numerical differentiation is never used on the product
//! path; finite differences appear only as a cross-check in tests.

use std::path::Path;

use crate::error::{Error, Result};
use crate::quad;
use crate::spline::CubicSpline;

/// Value and first two derivatives of a profile at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub f: f64,
    pub df: f64,
    pub ddf: f64,
}

/// A positive, even, square-integrable envelope function.
///
/// Variants can be matched on, but use the constructors: they validate the
/// parameter domains.
#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    /// f(x) = sech^(nu/2) x = (cosh x)^(-nu/2)
    SechPower { nu: f64 },
    /// f(x) = exp(-alpha x^2)
    Gaussian { alpha: f64 },
    /// f(x) = a / sqrt(1 + x^2)
    LorentzSqrt { a: f64 },
    /// Cubic-spline interpolant of user samples, evaluated at |x|.
    Tabulated(TabulatedProfile),
}

/// Spline-backed profile. Samples are given on a symmetric grid; only the
/// x >= 0 half is stored, with the even symmetry enforced through a clamped
/// zero slope at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedProfile {
    spline: CubicSpline,
    half_width: f64,
}

fn require_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            requirement: "a strictly positive finite real",
            value,
        })
    }
}

impl Profile {
    pub fn sech_power(nu: f64) -> Result<Self> {
        require_positive("nu", nu)?;
        Ok(Profile::SechPower { nu })
    }

    pub fn gaussian(alpha: f64) -> Result<Self> {
        require_positive("alpha", alpha)?;
        Ok(Profile::Gaussian { alpha })
    }

    pub fn lorentz_sqrt(a: f64) -> Result<Self> {
        require_positive("a", a)?;
        Ok(Profile::LorentzSqrt { a })
    }

    /// Build a tabulated profile from (x, f) samples.
    ///
    /// The samples must be strictly increasing in x, cover a symmetric range
    /// including x = 0, mirror evenly to 1e-12 relative, and be positive.
    pub fn tabulated(samples: &[(f64, f64)]) -> Result<Self> {
        let n = samples.len();
        if n < 5 {
            return Err(Error::InvalidProfileData(format!(
                "need at least 5 samples, got {n}"
            )));
        }
        for w in samples.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::InvalidProfileData(format!(
                    "abscissae not strictly increasing at x = {}",
                    w[1].0
                )));
            }
        }
        if n.is_multiple_of(2) {
            return Err(Error::InvalidProfileData(
                "sample count must be odd so that x = 0 is present".into(),
            ));
        }
        let mid = n / 2;
        if samples[mid].0 != 0.0 {
            return Err(Error::InvalidProfileData(format!(
                "middle sample must sit at x = 0, found x = {}",
                samples[mid].0
            )));
        }
        let span = samples[n - 1].0;
        for k in 0..=mid {
            let (xl, fl) = samples[mid - k];
            let (xr, fr) = samples[mid + k];
            if (xl + xr).abs() > 1e-12 * span.max(1.0) {
                return Err(Error::InvalidProfileData(format!(
                    "grid not symmetric: x = {xl} vs x = {xr}"
                )));
            }
            if (fl - fr).abs() > 1e-12 * fl.abs().max(fr.abs()) {
                return Err(Error::InvalidProfileData(format!(
                    "samples not even: f({xl}) = {fl} vs f({xr}) = {fr}"
                )));
            }
        }
        for &(x, f) in samples {
            if !(f.is_finite() && f > 0.0) {
                return Err(Error::InvalidProfileData(format!(
                    "f must be positive and finite, got f({x}) = {f}"
                )));
            }
        }

        let xs: Vec<f64> = samples[mid..].iter().map(|s| s.0).collect();
        let ys: Vec<f64> = samples[mid..].iter().map(|s| s.1).collect();
        let spline = CubicSpline::clamped_left_natural_right(xs, ys)?;
        Ok(Profile::Tabulated(TabulatedProfile {
            spline,
            half_width: span,
        }))
    }

    /// Load a tabulated profile from a whitespace-delimited two-column
    /// (x, f) text file. Lines starting with `#` are ignored.
    pub fn tabulated_from_file<P: AsRef<Path>>(path: P) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut samples = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line.split_whitespace();
            let parse = |tok: Option<&str>| -> Result<f64> {
                tok.ok_or_else(|| {
                    Error::InvalidProfileData(format!("line {}: expected two columns", lineno + 1))
                })?
                .parse::<f64>()
                .map_err(|e| Error::InvalidProfileData(format!("line {}: {e}", lineno + 1)))
            };
            let x = parse(cols.next())?;
            let f = parse(cols.next())?;
            if cols.next().is_some() {
                return Err(Error::InvalidProfileData(format!(
                    "line {}: expected exactly two columns",
                    lineno + 1
                )));
            }
            samples.push((x, f));
        }
        Profile::tabulated(&samples)
    }

    /// f, f', f'' at `x`.
    ///
    /// Panics if `x` falls outside a tabulated profile's data range; every
    /// public operation validates its grid or window against [`Profile::domain`]
    /// before evaluating.
    pub fn eval(&self, x: f64) -> Jet2 {
        match self {
            Profile::SechPower { nu } => {
                let mu = 0.5 * nu;
                let sech = 1.0 / x.cosh();
                let tanh = x.tanh();
                let f = sech.powf(mu);
                Jet2 {
                    f,
                    df: -mu * f * tanh,
                    ddf: f * (mu * mu - mu * (mu + 1.0) * sech * sech),
                }
            }
            Profile::Gaussian { alpha } => {
                let f = (-alpha * x * x).exp();
                Jet2 {
                    f,
                    df: -2.0 * alpha * x * f,
                    ddf: (4.0 * alpha * alpha * x * x - 2.0 * alpha) * f,
                }
            }
            Profile::LorentzSqrt { a } => {
                let w = 1.0 + x * x;
                let inv_sqrt = 1.0 / w.sqrt();
                let f = a * inv_sqrt;
                Jet2 {
                    f,
                    df: -a * x * inv_sqrt / w,
                    ddf: a * (2.0 * x * x - 1.0) * inv_sqrt / (w * w),
                }
            }
            Profile::Tabulated(tab) => {
                let (f, df, ddf) = tab
                    .spline
                    .eval(x.abs())
                    .expect("x within the tabulated domain; callers validate grids");
                Jet2 {
                    f,
                    df: if x < 0.0 { -df } else { df },
                    ddf,
                }
            }
        }
    }

    /// Domain of definition; `None` means the whole real line.
    pub fn domain(&self) -> Option<(f64, f64)> {
        match self {
            Profile::Tabulated(tab) => Some((-tab.half_width, tab.half_width)),
            _ => None,
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            Profile::SechPower { .. } => "sech-power",
            Profile::Gaussian { .. } => "gaussian",
            Profile::LorentzSqrt { .. } => "lorentz",
            Profile::Tabulated(_) => "tabulated",
        }
    }

    /// Closed-form antiderivative of 1/f² vanishing at 0, where the family
    /// has one. The phase of a pair is `gamma` times this.
    pub fn unit_phase_exact(&self, x: f64) -> Option<f64> {
        match self {
            // 1/f² = cosh x for nu = 1
            Profile::SechPower { nu } if *nu == 1.0 => Some(x.sinh()),
            // 1/f² = (1 + x²)/a²
            Profile::LorentzSqrt { a } => Some((x + x * x * x / 3.0) / (a * a)),
            _ => None,
        }
    }

    pub fn has_exact_phase(&self) -> bool {
        self.unit_phase_exact(0.0).is_some()
    }

    /// lim_{|x| -> inf} f''/f, where the family has a finite one.
    ///
    /// This is the additive constant that makes the gamma = 0 potential
    /// vanish at infinity, and fixes the energy under the as-given
    /// reference convention.
    pub fn curvature_ratio_limit(&self) -> Option<f64> {
        match self {
            Profile::SechPower { nu } => Some(nu * nu / 4.0),
            Profile::LorentzSqrt { .. } => Some(0.0),
            Profile::Gaussian { .. } | Profile::Tabulated(_) => None,
        }
    }

    /// ∫ f² dx over the profile's domain to absolute tolerance `tol`.
    ///
    /// Analytic families integrate over the whole line with a doubling tail;
    /// tabulated profiles integrate over their data range. A tail that keeps
    /// growing reports [`Error::DivergentIntegral`].
    pub fn norm_squared(&self, tol: f64) -> Result<f64> {
        require_positive("tol", tol)?;
        let f2 = |x: f64| {
            let j = self.eval(x);
            j.f * j.f
        };
        match self.domain() {
            Some((_, hi)) => {
                let half = quad::integrate(f2, 0.0, hi, tol / 2.0)?;
                Ok(2.0 * half.value)
            }
            None => {
                let tail = quad::integrate_tail(f2, 0.0, tol / 2.0)?;
                Ok(2.0 * tail.value)
            }
        }
    }

    /// ∫_{|x| > x_from} f² dx, the tail weight outside `[-x_from, x_from]`.
    pub fn norm_tail(&self, x_from: f64, tol: f64) -> Result<f64> {
        require_positive("tol", tol)?;
        if !(x_from >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "x_from",
                requirement: "non-negative",
                value: x_from,
            });
        }
        let f2 = |x: f64| {
            let j = self.eval(x);
            j.f * j.f
        };
        match self.domain() {
            Some((_, hi)) => {
                if x_from >= hi {
                    return Ok(0.0);
                }
                let half = quad::integrate(f2, x_from, hi, tol / 2.0)?;
                Ok(2.0 * half.value)
            }
            None => {
                let tail = quad::integrate_tail(f2, x_from, tol / 2.0)?;
                Ok(2.0 * tail.value)
            }
        }
    }
}
