//! Landscape analysis of the Lorentzian-family potential
//! V - E = (2x² - 1)/(x² + 1)² - (gamma²/a⁴)(x² + 1)².
//!
//! Off-origin maxima sit at x±² = z solving gamma²(z + 1)⁴ = a⁴(2 - z);
//! the left side grows and the right side falls on [0, 2], so the root is
//! unique whenever gamma² <= 2a⁴ and absent beyond. The barrier height
//! relative to the pair energy is 3(z - 1)/(z + 1)², which changes sign at
//! z = 1, i.e. at gamma² = a⁴/16: below it the states sit inside the well,
//! above it they sit above the barriers, and past gamma² = 2a⁴ the well is
//! gone altogether.

use crate::error::{Error, Result};
use crate::rootfind;

/// Where the degenerate states sit relative to the well structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// gamma² >= 2a⁴ (boundary included): no off-origin maxima, the
    /// potential is convex through the origin and the states lie above it.
    ConvexNoWell,
    /// a⁴/16 < gamma² < 2a⁴: a well exists but the states sit above the barriers.
    WellStatesAbove,
    /// gamma² < a⁴/16: the states sit inside the well.
    WellStatesInside,
    /// gamma² = a⁴/16 exactly: z = 1, barriers level with the energy.
    CriticalBoundary,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::ConvexNoWell => "ConvexNoWell",
            Regime::WellStatesAbove => "WellStatesAbove",
            Regime::WellStatesInside => "WellStatesInside",
            Regime::CriticalBoundary => "CriticalBoundary",
        }
    }
}

/// The two gamma² thresholds of the classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellThresholds {
    /// gamma² = 2a⁴: well formation boundary.
    pub well_formation_gamma_sq: f64,
    /// gamma² = a⁴/16: state placement boundary (z = 1).
    pub placement_gamma_sq: f64,
}

/// Classification of one (a, gamma) point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellReport {
    pub regime: Regime,
    /// z = x±² solving the maxima condition; absent for gamma² > 2a⁴.
    pub z_root: Option<f64>,
    /// The maxima pair (-sqrt z, +sqrt z), reported both or neither.
    pub x_maxima: Option<(f64, f64)>,
    /// V(x±) - E = 3(z - 1)/(z + 1)².
    pub barrier_height_rel: Option<f64>,
    pub thresholds: WellThresholds,
}

/// Direct evaluation of V - E at x for the Lorentzian family; the
/// independent route used to cross-validate the barrier formula.
pub fn lorentz_v_minus_e(a: f64, gamma: f64, x: f64) -> f64 {
    let w = x * x + 1.0;
    (2.0 * x * x - 1.0) / (w * w) - (gamma * gamma / a.powi(4)) * w * w
}

/// Locate the off-origin maxima and classify the (a, gamma) landscape.
///
/// The root of gamma²(z + 1)⁴ - a⁴(2 - z) is bisected on [0, 2] to 1e-12;
/// every gamma >= 0 classifies (no error cases beyond parameter validation).
pub fn solve_maxima(a: f64, gamma: f64) -> Result<WellReport> {
    if !(gamma >= 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "gamma",
            requirement: "a finite real >= 0",
            value: gamma,
        });
    }
    solve_maxima_gamma_sq(a, gamma * gamma)
}

/// [`solve_maxima`] parameterized by gamma² directly. Both thresholds are
/// exact conditions on gamma², so boundary cases (gamma² = 2a⁴, a⁴/16) are
/// only representable through this entry point.
pub fn solve_maxima_gamma_sq(a: f64, gamma_sq: f64) -> Result<WellReport> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "a",
            requirement: "a strictly positive finite real",
            value: a,
        });
    }
    if !(gamma_sq >= 0.0 && gamma_sq.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "gamma_sq",
            requirement: "a finite real >= 0",
            value: gamma_sq,
        });
    }

    let a4 = a.powi(4);
    let g2 = gamma_sq;
    let thresholds = WellThresholds {
        well_formation_gamma_sq: 2.0 * a4,
        placement_gamma_sq: a4 / 16.0,
    };

    let regime = if g2 >= thresholds.well_formation_gamma_sq {
        Regime::ConvexNoWell
    } else if g2 == thresholds.placement_gamma_sq {
        Regime::CriticalBoundary
    } else if g2 < thresholds.placement_gamma_sq {
        Regime::WellStatesInside
    } else {
        Regime::WellStatesAbove
    };

    let z_root = if g2 > thresholds.well_formation_gamma_sq {
        None
    } else if g2 == thresholds.well_formation_gamma_sq {
        Some(0.0)
    } else if g2 == 0.0 {
        Some(2.0)
    } else {
        let condition = |z: f64| {
            let zp = z + 1.0;
            g2 * zp * zp * zp * zp - a4 * (2.0 - z)
        };
        Some(rootfind::bisect(condition, 0.0, 2.0, 1e-12)?)
    };

    let x_maxima = z_root.map(|z| (-z.sqrt(), z.sqrt()));
    let barrier_height_rel = z_root.map(|z| 3.0 * (z - 1.0) / ((z + 1.0) * (z + 1.0)));

    #[cfg(debug_assertions)]
    if let (Some(z), Some(b)) = (z_root, barrier_height_rel) {
        let direct = lorentz_v_minus_e(a, gamma_sq.sqrt(), z.sqrt());
        debug_assert!(
            (b - direct).abs() <= 1e-10 * (1.0 + b.abs()),
            "barrier formula {b} disagrees with direct evaluation {direct} at z = {z}"
        );
    }

    Ok(WellReport {
        regime,
        z_root,
        x_maxima,
        barrier_height_rel,
        thresholds,
    })
}

/// One report per gamma. The z roots come out non-increasing in gamma²
/// because the maxima condition's right side decreases in z.
pub fn classify_sweep(a: f64, gammas: &[f64]) -> Result<Vec<WellReport>> {
    if gammas.is_empty() {
        return Err(Error::InvalidGrid("gamma sweep must be nonempty".into()));
    }
    gammas.iter().map(|&g| solve_maxima(a, g)).collect()
}

/// [`classify_sweep`] over gamma² values.
pub fn classify_sweep_gamma_sq(a: f64, gamma_sqs: &[f64]) -> Result<Vec<WellReport>> {
    if gamma_sqs.is_empty() {
        return Err(Error::InvalidGrid("gamma sweep must be nonempty".into()));
    }
    gamma_sqs
        .iter()
        .map(|&g2| solve_maxima_gamma_sq(a, g2))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    #[test]
    fn well_formation_boundary() {
        // gamma² = 2a⁴: the maxima merge into the origin.
        let r = solve_maxima_gamma_sq(1.0, 2.0).unwrap();
        assert_eq!(r.regime, Regime::ConvexNoWell);
        assert_eq!(r.z_root, Some(0.0));
        assert_eq!(r.barrier_height_rel, Some(-3.0));

        let r = solve_maxima_gamma_sq(2.0, 32.0).unwrap();
        assert_eq!(r.regime, Regime::ConvexNoWell);

        // Strictly beyond the boundary there is no root at all.
        let r = solve_maxima_gamma_sq(1.0, 2.0 + 1e-12).unwrap();
        assert_eq!(r.regime, Regime::ConvexNoWell);
        assert_eq!(r.z_root, None);
        assert_eq!(r.x_maxima, None);
    }

    #[test]
    fn critical_placement_boundary() {
        // gamma² = a⁴/16 lands exactly on z = 1 with a level barrier;
        // gamma = 0.25 squares to exactly 1/16, so both entry points agree.
        for r in [
            solve_maxima_gamma_sq(1.0, 0.0625).unwrap(),
            solve_maxima(1.0, 0.25).unwrap(),
        ] {
            assert_eq!(r.regime, Regime::CriticalBoundary);
            assert_eq!(r.z_root, Some(1.0));
            assert_eq!(r.barrier_height_rel, Some(0.0));
        }
    }

    #[test]
    fn small_gamma_puts_states_inside() {
        // Frozen oracle root of 0.01 (z+1)⁴ = 2 - z.
        let r = solve_maxima(1.0, 0.1).unwrap();
        assert_eq!(r.regime, Regime::WellStatesInside);
        let z = r.z_root.unwrap();
        assert_abs_diff_eq!(z, 1.566_276_002_807_535_7, epsilon = 1e-11);
        let b = r.barrier_height_rel.unwrap();
        assert_abs_diff_eq!(b, 0.257_954_249_497_154_36, epsilon = 1e-11);
        assert!(b > 0.0);
        // Direct potential evaluation agrees with the barrier formula.
        assert_abs_diff_eq!(b, lorentz_v_minus_e(1.0, 0.1, z.sqrt()), epsilon = 1e-10);
    }

    #[test]
    fn gamma_zero_degenerates_to_z_two() {
        let r = solve_maxima(1.0, 0.0).unwrap();
        assert_eq!(r.z_root, Some(2.0));
        let (xm, xp) = r.x_maxima.unwrap();
        assert_relative_eq!(xp, 2.0f64.sqrt(), max_relative = 1e-15);
        assert_eq!(xm, -xp);
        assert_eq!(r.regime, Regime::WellStatesInside);
    }

    #[test]
    fn sweep_crosses_both_thresholds() {
        let gammas: Vec<f64> = [0.001f64, 0.05, 0.5, 1.9, 3.0]
            .iter()
            .map(|g2| g2.sqrt())
            .collect();
        let reports = classify_sweep(1.0, &gammas).unwrap();
        let regimes: Vec<Regime> = reports.iter().map(|r| r.regime).collect();
        assert_eq!(
            regimes,
            vec![
                Regime::WellStatesInside,
                Regime::WellStatesInside,
                Regime::WellStatesAbove,
                Regime::WellStatesAbove,
                Regime::ConvexNoWell,
            ]
        );
        // z non-increasing in gamma² while it exists
        let zs: Vec<f64> = reports.iter().filter_map(|r| r.z_root).collect();
        assert!(zs.windows(2).all(|w| w[1] <= w[0]));
        // barrier sign matches the regime
        for r in &reports {
            if let Some(b) = r.barrier_height_rel {
                match r.regime {
                    Regime::WellStatesInside => assert!(b > 0.0),
                    Regime::WellStatesAbove => assert!(b < 0.0),
                    _ => {}
                }
            }
        }
    }

    #[test]
    fn empty_sweep_rejected() {
        assert!(classify_sweep(1.0, &[]).is_err());
        assert!(solve_maxima(0.0, 1.0).is_err());
        assert!(solve_maxima(1.0, -1.0).is_err());
    }

    #[test]
    fn thresholds_reproduce_from_the_condition() {
        // gamma²(z) = a⁴(2 - z)/(z + 1)⁴ at z = 0 and z = 1.
        for a in [1.0f64, 0.5, 2.0] {
            let a4 = a.powi(4);
            let cond = |z: f64| a4 * (2.0 - z) / (z + 1.0f64).powi(4);
            let r = solve_maxima(a, 0.1).unwrap();
            assert_relative_eq!(
                cond(0.0),
                r.thresholds.well_formation_gamma_sq,
                max_relative = 1e-15
            );
            assert_relative_eq!(
                cond(1.0),
                r.thresholds.placement_gamma_sq,
                max_relative = 1e-15
            );
        }
    }

    #[test]
    fn two_formula_agreement_across_regimes() {
        for g2 in [1e-4f64, 1e-2, 0.0625, 0.3, 1.0, 1.99] {
            let gamma = g2.sqrt();
            let r = solve_maxima(1.0, gamma).unwrap();
            let z = r.z_root.unwrap();
            let direct = lorentz_v_minus_e(1.0, gamma, z.sqrt());
            assert_abs_diff_eq!(r.barrier_height_rel.unwrap(), direct, epsilon = 1e-10);
        }
    }

    proptest! {
        #[test]
        fn root_is_unique_when_well_exists(u in 1e-6..1.999f64, a in 0.5..2.0f64) {
            // u = gamma²/a⁴ < 2 guarantees a bracket; count sign changes on [0, 2].
            let a4 = a.powi(4);
            let g2 = u * a4;
            let condition = |z: f64| g2 * (z + 1.0f64).powi(4) - a4 * (2.0 - z);
            let mut changes = 0;
            let mut prev = condition(0.0);
            for i in 1..=400 {
                let z = 2.0 * i as f64 / 400.0;
                let cur = condition(z);
                if prev.signum() != cur.signum() {
                    changes += 1;
                }
                prev = cur;
            }
            prop_assert_eq!(changes, 1);
        }

        #[test]
        fn scaling_invariance(
            u in prop_oneof![1e-4..0.06f64, 0.066..1.9f64],
            a in 0.5..2.0f64,
            lambda in 0.5..2.0f64,
        ) {
            // (a, gamma) and (lambda a, lambda² gamma) share gamma²/a⁴, so the
            // report is the same up to rounding and x locations are unchanged.
            let gamma = (u * a.powi(4)).sqrt();
            let r1 = solve_maxima(a, gamma).unwrap();
            let r2 = solve_maxima(lambda * a, lambda * lambda * gamma).unwrap();
            prop_assert_eq!(r1.regime, r2.regime);
            let (z1, z2) = (r1.z_root.unwrap(), r2.z_root.unwrap());
            prop_assert!((z1 - z2).abs() <= 1e-9, "z {} vs {}", z1, z2);
            let (b1, b2) = (
                r1.barrier_height_rel.unwrap(),
                r2.barrier_height_rel.unwrap(),
            );
            prop_assert!((b1 - b2).abs() <= 1e-9);
            let (x1, x2) = (r1.x_maxima.unwrap().1, r2.x_maxima.unwrap().1);
            prop_assert!((x1 - x2).abs() <= 1e-9);
        }
    }
}
