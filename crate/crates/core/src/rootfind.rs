//! Bracketing bisection, the root-finding workhorse of the crate.
//!
//! Everything that needs a root here (phase inversion, maxima conditions,
//! eigenvalue location, zero refinement) comes with a guaranteed bracket,
//! so plain bisection is both sufficient and the most robust choice.

use crate::error::{Error, Result};

/// Find a root of `f` inside `[lo, hi]` by bisection.
///
/// Requires a sign change (or an exact zero at an endpoint). Iterates until
/// the bracket width drops below `xtol` and returns the bracket midpoint.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, xtol: f64) -> Result<f64> {
    bisect_fallible(|x| Ok(f(x)), lo, hi, xtol)
}

/// [`bisect`] for evaluations that can themselves fail (e.g. quadrature-backed).
pub fn bisect_fallible<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    xtol: f64,
) -> Result<f64> {
    if !(xtol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "xtol",
            requirement: "strictly positive",
            value: xtol,
        });
    }
    if lo > hi {
        std::mem::swap(&mut lo, &mut hi);
    }
    let mut f_lo = f(lo)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    let f_hi = f(hi)?;
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoBracket { lo, hi, f_lo, f_hi });
    }

    // f64 halving reaches any xtol > 0 within ~1100 steps; the bound is a
    // safety net, not a tuning knob.
    for _ in 0..4096 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= xtol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
