//! Error type shared by every module of the crate.

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A constructor or operation received a parameter outside its domain.
    #[error("parameter `{name}` must be {requirement}, got {value}")]
    InvalidParameter {
        name: &'static str,
        requirement: &'static str,
        value: f64,
    },

    /// A grid specification violates an operation's preconditions.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// Adaptive quadrature stopped without reaching the requested tolerance.
    /// Carries the achieved error estimate so callers can decide what to do.
    #[error("quadrature did not converge: achieved error {achieved:.3e} > requested {requested:.3e}")]
    QuadratureNoConvergence { achieved: f64, requested: f64 },

    /// A tail integral kept growing as the truncation radius was doubled.
    #[error("integral diverges: increment {last_increment:.6e} at half-width {half_width:.3e} is not decaying")]
    DivergentIntegral {
        last_increment: f64,
        half_width: f64,
    },

    /// Root bracketing failed: the supplied interval does not change sign.
    #[error("no sign change on bracket [{lo}, {hi}]: f(lo)={f_lo:.6e}, f(hi)={f_hi:.6e}")]
    NoBracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    /// Evaluation outside a tabulated profile's data range.
    #[error("x = {x} is outside the tabulated domain [{lo}, {hi}]")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },

    /// A tabulated profile file or sample set failed validation.
    #[error("invalid tabulated profile: {0}")]
    InvalidProfileData(String),

    /// The requested operation needs a finite limit of f''/f at infinity
    /// and the profile family does not have one.
    #[error("f''/f has no finite limit at infinity for the {family} family")]
    UnsupportedLimit { family: &'static str },

    /// The sampling grid cannot separate adjacent zeros: the phase advances
    /// by >= pi across a single cell, so two zeros may share it.
    #[error("grid too coarse to separate zeros near x = {x}: phase advance {phase_advance:.3} >= pi over one cell; use a finer grid")]
    ZeroResolution { x: f64, phase_advance: f64 },

    /// The Numerov step violates the steps-per-wavelength requirement.
    #[error("step {step:.3e} too coarse for |E - V| up to {k_squared_max:.3e}: need h*sqrt(max|E-V|) <= {limit:.3e}")]
    ResolutionTooCoarse {
        step: f64,
        k_squared_max: f64,
        limit: f64,
    },

    /// The integrated wavefunction overflowed more times than the rescaling cap allows.
    #[error("Numerov integration overflowed: {rescales} rescalings exceed the cap of {cap}")]
    Overflow { rescales: usize, cap: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
