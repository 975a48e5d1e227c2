//! Adaptive quadrature on finite intervals and even-integrand tails.
//!
//! The finite-interval routine is a globally adaptive Gauss–Kronrod 7/15
//! scheme in the QUADPACK style: the interval with the largest error
//! estimate is repeatedly split until the summed estimate meets the
//! requested absolute tolerance. Tail integrals double the truncation
//! radius until the increments decay below tolerance, and report
//! divergence when they stop decaying.

use crate::error::{Error, Result};

/// Abscissae of the 15-point Kronrod rule on [-1, 1] (QUADPACK `dqk15`).
/// Even-indexed entries are the embedded 7-point Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

/// Weights of the embedded 7-point Gauss rule.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Weights of the 15-point Kronrod rule.
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    /// Conservative absolute error estimate.
    pub abs_error: f64,
    /// Number of interval bisections performed.
    pub subdivisions: usize,
}

/// One Gauss–Kronrod panel: returns (integral, error estimate, integral of |f|).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut res_gauss = WG[3] * f_center;
    let mut res_kronrod = WGK[7] * f_center;
    let mut res_abs = res_kronrod.abs();

    let mut fv = [0.0f64; 15];
    fv[14] = f_center;
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[j] = f1;
        fv[7 + j] = f2;
        res_kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = 0.5 * res_kronrod;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv[j] - mean).abs() + (fv[7 + j] - mean).abs());
    }

    let integral = res_kronrod * half;
    res_abs *= half.abs();
    res_asc *= half.abs();

    // QUADPACK error rescaling: sharper than |K - G| alone, floored at
    // 50 ulps of the absolute integral.
    let mut err = ((res_kronrod - res_gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    let round_floor = 50.0 * f64::EPSILON * res_abs;
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) && round_floor > err {
        err = round_floor;
    }

    (integral, err, res_abs)
}

/// Integrate `f` over `[a, b]` to absolute tolerance `abs_tol`.
///
/// The requested tolerance is floored at 50 ulps of the integral of |f|,
/// so asking for more precision than f64 can deliver is not an error.
/// Fails with [`Error::QuadratureNoConvergence`] if the estimate is still
/// above tolerance after `max_subdivisions` splits.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Result<QuadResult> {
    integrate_with_limit(&f, a, b, abs_tol, 512)
}

pub fn integrate_with_limit<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_subdivisions: usize,
) -> Result<QuadResult> {
    if !(abs_tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "abs_tol",
            requirement: "strictly positive",
            value: abs_tol,
        });
    }
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            abs_error: 0.0,
            subdivisions: 0,
        });
    }

    // Global acceptance is floored at twice the per-panel rounding floor so
    // that a fully subdivided integral whose estimates sit on the floor still
    // converges.
    let (v, e, res_abs) = gk15(f, a, b);
    let tol = abs_tol.max(100.0 * f64::EPSILON * res_abs);
    if e <= tol {
        return Ok(QuadResult {
            value: v,
            abs_error: e,
            subdivisions: 0,
        });
    }

    // Worklist ordered by descending error estimate; linear scan is fine
    // at the subdivision counts used here.
    struct Panel {
        a: f64,
        b: f64,
        value: f64,
        err: f64,
        abs: f64,
    }
    let mut panels = vec![Panel {
        a,
        b,
        value: v,
        err: e,
        abs: res_abs,
    }];
    let mut total_err = e;
    let mut total_abs = res_abs;

    for split in 1..=max_subdivisions {
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, _)| i)
            .expect("worklist never empty");
        let Panel {
            a: pa,
            b: pb,
            err: p_err,
            abs: p_abs,
            ..
        } = panels[worst];
        let mid = 0.5 * (pa + pb);
        if mid <= pa.min(pb) || mid >= pa.max(pb) {
            // Interval no longer splittable in f64; accept what we have.
            break;
        }
        let (v1, e1, abs1) = gk15(f, pa, mid);
        let (v2, e2, abs2) = gk15(f, mid, pb);

        total_err = total_err - p_err + e1 + e2;
        total_abs = total_abs - p_abs + abs1 + abs2;
        panels[worst] = Panel {
            a: pa,
            b: mid,
            value: v1,
            err: e1,
            abs: abs1,
        };
        panels.push(Panel {
            a: mid,
            b: pb,
            value: v2,
            err: e2,
            abs: abs2,
        });

        let tol = abs_tol.max(100.0 * f64::EPSILON * total_abs);
        if total_err <= tol {
            return Ok(QuadResult {
                value: panels.iter().map(|p| p.value).sum(),
                abs_error: total_err,
                subdivisions: split,
            });
        }
    }

    let value: f64 = panels.iter().map(|p| p.value).sum();
    let tol = abs_tol.max(100.0 * f64::EPSILON * total_abs);
    if total_err <= tol {
        Ok(QuadResult {
            value,
            abs_error: total_err,
            subdivisions: panels.len() - 1,
        })
    } else {
        Err(Error::QuadratureNoConvergence {
            achieved: total_err,
            requested: abs_tol,
        })
    }
}

/// Integrate an eventually-decaying `f` over `[from, +inf)`.
///
/// Panels `[X, 2X]` are accumulated with doubling radius until a panel
/// contributes less than `abs_tol / 4` in magnitude. If panel magnitudes
/// ever grow from one doubling to the next, the integral is reported as
/// divergent.
pub fn integrate_tail<F: Fn(f64) -> f64>(f: F, from: f64, abs_tol: f64) -> Result<QuadResult> {
    const MAX_DOUBLINGS: usize = 60;
    let mut total = 0.0;
    let mut err = 0.0;
    let mut subdivisions = 0;
    let mut lo = from;
    if lo < 1.0 {
        // Doubling from a tiny radius would crawl; cover [from, 1] in one go.
        let prefix = integrate_with_limit(&f, lo, 1.0, abs_tol / 4.0, 256)?;
        total += prefix.value;
        err += prefix.abs_error;
        subdivisions += prefix.subdivisions;
        lo = 1.0;
    }
    let mut prev_panel = f64::INFINITY;
    for _ in 0..MAX_DOUBLINGS {
        let hi = 2.0 * lo;
        let panel = integrate_with_limit(&f, lo, hi, abs_tol / 4.0, 256)?;
        total += panel.value;
        err += panel.abs_error;
        subdivisions += panel.subdivisions;
        let mag = panel.value.abs();
        if mag < abs_tol / 4.0 {
            return Ok(QuadResult {
                value: total,
                abs_error: err + mag,
                subdivisions,
            });
        }
        if mag > prev_panel {
            return Err(Error::DivergentIntegral {
                last_increment: panel.value,
                half_width: hi,
            });
        }
        prev_panel = mag;
        lo = hi;
    }
    Err(Error::DivergentIntegral {
        last_increment: prev_panel,
        half_width: lo,
    })
}

/// Composite Simpson rule on a uniform grid with an odd number of points.
///
/// Used for integrals of quantities already sampled on a pair grid.
pub fn simpson_uniform(values: &[f64], step: f64) -> f64 {
    assert!(
        values.len() >= 3 && values.len() % 2 == 1,
        "Simpson needs an odd number of points >= 3"
    );
    let n = values.len();
    let mut acc = values[0] + values[n - 1];
    for (i, v) in values.iter().enumerate().take(n - 1).skip(1) {
        acc += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    acc * step / 3.0
}
