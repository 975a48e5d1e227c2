//! Construction and numerical verification of parity-paired degenerate
//! bound states in non-singular, bottomless one-dimensional potentials.
//!
//! The pipeline: pick an envelope profile f ([`profiles`]), build the phase,
//! potential, and degenerate pair from it ([`construct`]), then check every
//! analytic claim numerically: Schrödinger residuals, Wronskian constancy,
//! zero interlacing ([`verify`]), the Lorentzian well/barrier landscape
//! ([`wellscape`]), and an ansatz-blind Numerov eigensolver on a truncated
//! box ([`spectra`]).

// Validation uses the `!(x > 0.0)` form throughout: unlike `x <= 0.0` it
// also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod construct;
pub mod error;
pub mod profiles;
pub mod quad;
pub mod rootfind;
pub mod spectra;
pub mod spline;
pub mod verify;
pub mod wellscape;

pub use error::{Error, Result};
