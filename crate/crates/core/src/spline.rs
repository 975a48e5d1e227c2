//! Cubic spline interpolation with analytic first and second derivatives.
//!
//! Tabulated profiles are even functions, so the spline is built on the
//! half-range x >= 0 with a clamped zero slope at the origin (the even
//! symmetry condition) and a natural end at the last knot.

use crate::error::{Error, Result};

/// C² piecewise cubic through the given knots.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    /// Second derivatives at the knots.
    m: Vec<f64>,
}

impl CubicSpline {
    /// Build a spline with s'(xs[0]) = 0 and s''(xs[n-1]) = 0.
    ///
    /// Knots must be strictly increasing and at least three.
    pub fn clamped_left_natural_right(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::InvalidProfileData(format!(
                "knot count mismatch: {} abscissae vs {} ordinates",
                xs.len(),
                ys.len()
            )));
        }
        let n = xs.len();
        if n < 3 {
            return Err(Error::InvalidProfileData(format!(
                "need at least 3 knots, got {n}"
            )));
        }
        for w in xs.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::InvalidProfileData(format!(
                    "abscissae not strictly increasing at x = {}",
                    w[1]
                )));
            }
        }

        // Tridiagonal system in the knot second derivatives (Thomas solve).
        // Row 0 encodes the clamped slope, row n-1 the natural end.
        let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
        let mut diag = vec![0.0; n];
        let mut upper = vec![0.0; n - 1];
        let mut lower = vec![0.0; n - 1];
        let mut rhs = vec![0.0; n];

        diag[0] = h[0] / 3.0;
        upper[0] = h[0] / 6.0;
        rhs[0] = (ys[1] - ys[0]) / h[0]; // minus the clamped slope, which is 0

        for i in 1..n - 1 {
            lower[i - 1] = h[i - 1] / 6.0;
            diag[i] = (h[i - 1] + h[i]) / 3.0;
            upper[i] = h[i] / 6.0;
            rhs[i] = (ys[i + 1] - ys[i]) / h[i] - (ys[i] - ys[i - 1]) / h[i - 1];
        }

        lower[n - 2] = 0.0;
        diag[n - 1] = 1.0;
        rhs[n - 1] = 0.0;

        for i in 1..n {
            let w = lower[i - 1] / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        let mut m = vec![0.0; n];
        m[n - 1] = rhs[n - 1] / diag[n - 1];
        for i in (0..n - 1).rev() {
            m[i] = (rhs[i] - upper[i] * m[i + 1]) / diag[i];
        }

        Ok(Self { xs, ys, m })
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.xs[0], *self.xs.last().unwrap())
    }

    fn segment(&self, x: f64) -> Result<usize> {
        let (lo, hi) = self.domain();
        if x < lo || x > hi {
            return Err(Error::OutOfDomain { x, lo, hi });
        }
        // partition_point returns the first knot > x; the segment starts one before.
        let idx = self.xs.partition_point(|&k| k <= x);
        Ok(idx.clamp(1, self.xs.len() - 1) - 1)
    }

    /// Value, first, and second derivative at `x`.
    pub fn eval(&self, x: f64) -> Result<(f64, f64, f64)> {
        let i = self.segment(x)?;
        let (x0, x1) = (self.xs[i], self.xs[i + 1]);
        let (y0, y1) = (self.ys[i], self.ys[i + 1]);
        let (m0, m1) = (self.m[i], self.m[i + 1]);
        let h = x1 - x0;
        let a = x1 - x;
        let b = x - x0;

        let value = m0 * a * a * a / (6.0 * h)
            + m1 * b * b * b / (6.0 * h)
            + (y0 / h - m0 * h / 6.0) * a
            + (y1 / h - m1 * h / 6.0) * b;
        let deriv =
            -m0 * a * a / (2.0 * h) + m1 * b * b / (2.0 * h) + (y1 - y0) / h - (m1 - m0) * h / 6.0;
        let second = (m0 * a + m1 * b) / h;
        Ok((value, deriv, second))
    }
}
