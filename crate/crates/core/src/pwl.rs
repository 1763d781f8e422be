//! Odd-symmetric continuous piecewise-linear scalar functions.
//!
//! These carry both the dimensionless nonlinearity `g(x)` of the oscillator
//! and the volt-ampere curves `u(i)` of the op-amp resistor stages. Only the
//! positive-side breakpoints and the per-segment slopes are stored; segment
//! intercepts are recomputed from continuity so the curve cannot be
//! constructed discontinuous, and negative arguments are evaluated through
//! odd symmetry.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct PwlOddFunction {
    /// Positive-side break abscissae, strictly increasing, all > 0.
    breakpoints: Vec<f64>,
    /// One slope per segment from the origin outward (`breakpoints.len() + 1`).
    slopes: Vec<f64>,
    /// Intercepts implied by continuity; `intercepts[0] == 0`.
    intercepts: Vec<f64>,
}

impl PwlOddFunction {
    /// Builds the function from positive-side breakpoints and outward slopes.
    pub fn new(breakpoints: Vec<f64>, slopes: Vec<f64>) -> Result<Self> {
        if slopes.len() != breakpoints.len() + 1 {
            return Err(Error::InvalidPwl(format!(
                "need {} slopes for {} breakpoints, got {}",
                breakpoints.len() + 1,
                breakpoints.len(),
                slopes.len()
            )));
        }
        if breakpoints.iter().any(|b| !b.is_finite() || *b <= 0.0) {
            return Err(Error::InvalidPwl(
                "breakpoints must be finite and > 0".into(),
            ));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPwl(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        if slopes.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidPwl("slopes must be finite".into()));
        }
        let mut intercepts = vec![0.0; slopes.len()];
        for j in 1..slopes.len() {
            intercepts[j] = intercepts[j - 1] + (slopes[j - 1] - slopes[j]) * breakpoints[j - 1];
        }
        Ok(PwlOddFunction {
            breakpoints,
            slopes,
            intercepts,
        })
    }

    /// Three-segment curve: `inner_slope` inside `|x| < breakpoint`,
    /// `outer_slope` beyond.
    pub fn three_segment(inner_slope: f64, outer_slope: f64, breakpoint: f64) -> Result<Self> {
        Self::new(vec![breakpoint], vec![inner_slope, outer_slope])
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    pub fn intercepts(&self) -> &[f64] {
        &self.intercepts
    }

    /// Segment index for magnitude `a >= 0`; a point exactly on a breakpoint
    /// belongs to the inner segment (the two formulas agree there anyway).
    fn segment(&self, a: f64) -> usize {
        self.breakpoints.iter().take_while(|b| **b < a).count()
    }

    /// Evaluates the function; non-finite input is a domain error.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::NonFinite("pwl argument"));
        }
        Ok(self.value(x))
    }

    /// Total evaluation path used by the vector fields; NaN propagates.
    pub(crate) fn value(&self, x: f64) -> f64 {
        let a = x.abs();
        let j = self.segment(a);
        let v = self.slopes[j] * a + self.intercepts[j];
        if x < 0.0 {
            -v
        } else {
            v
        }
    }

    /// Slope of the active segment at `x` (inner convention at breakpoints).
    /// Odd symmetry makes the derivative even, so the sign of `x` is ignored.
    pub fn slope_at(&self, x: f64) -> f64 {
        self.slopes[self.segment(x.abs())]
    }

    /// Same curve with every value divided by `divisor` (slopes and
    /// intercepts scale, breakpoints stay). Turns the combined resistor's
    /// volt-ampere curve into the dimensionless nonlinearity `u/r0`.
    pub fn values_divided(&self, divisor: f64) -> Result<Self> {
        if !divisor.is_finite() || divisor == 0.0 {
            return Err(Error::InvalidPwl("divisor must be finite and non-zero".into()));
        }
        Self::new(
            self.breakpoints.clone(),
            self.slopes.iter().map(|s| s / divisor).collect(),
        )
    }

    /// Pointwise sum of two curves; the result keeps odd symmetry and
    /// continuity by construction.
    pub fn sum(&self, other: &Self) -> Self {
        let mut bps: Vec<f64> = self
            .breakpoints
            .iter()
            .chain(other.breakpoints.iter())
            .copied()
            .collect();
        bps.sort_by(f64::total_cmp);
        bps.dedup();
        let mut slopes = Vec::with_capacity(bps.len() + 1);
        for j in 0..=bps.len() {
            // A probe point inside segment j: its upper breakpoint (inner
            // convention assigns it to segment j), or past the last one.
            let probe = if j < bps.len() {
                bps[j]
            } else {
                bps.last().copied().unwrap_or(0.0) + 1.0
            };
            slopes.push(self.slope_at(probe) + other.slope_at(probe));
        }
        Self::new(bps, slopes).expect("sum of valid curves is valid")
    }
}
