//! Oscillator models: the dimensionless equations, the physical circuit
//! equations in rescaled units, the op-amp resistor stages, and fixed points.
//!
//! Physical quantities use the rescaled unit system throughout: currents in
//! mA, resistances in kΩ, inductances in kH, capacitances in mF, voltages in
//! V and time in seconds. In these units the circuit equations carry the same
//! numerals as the dimensionless ones.

use crate::error::{Error, Result};
use crate::pwl::PwlOddFunction;
use crate::state::State3;

/// Dimensionless oscillator parameters.
///
/// The vector field is
/// `dx/dτ = α (y − x − g(x))`, `dy/dτ = x − y + z`, `dz/dτ = −β y`,
/// with `g` an odd piecewise-linear nonlinearity.
#[derive(Debug, Clone, PartialEq)]
pub struct ChuaParams {
    alpha: f64,
    beta: f64,
    g: PwlOddFunction,
}

impl ChuaParams {
    /// Parameters with the standard three-segment nonlinearity
    /// (inner slope −1.2, outer slope −0.6, breakpoint 1).
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        Self::with_g(alpha, beta, standard_g())
    }

    pub fn with_g(alpha: f64, beta: f64, g: PwlOddFunction) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) || !(beta.is_finite() && beta > 0.0) {
            return Err(Error::InvalidParams(format!(
                "alpha and beta must be finite and > 0 (got alpha={alpha}, beta={beta})"
            )));
        }
        Ok(ChuaParams { alpha, beta, g })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn g(&self) -> &PwlOddFunction {
        &self.g
    }

    /// Right-hand side of the dimensionless equations.
    pub fn derivative(&self, s: State3) -> State3 {
        let g = self.g.value(s.x());
        State3::new(
            self.alpha * (s.y() - s.x() - g),
            s.x() - s.y() + s.z(),
            -self.beta * s.y(),
        )
    }

    /// Fixed points: the origin plus any symmetric pair `(±x_e, 0, ∓x_e)`
    /// solving `x + g(x) = 0` inside an outer segment.
    ///
    /// With the three-segment nonlinearity the pair sits at
    /// `x_e = (m0 − m1) / (1 + m0)` times the breakpoint and exists only when
    /// that exceeds the breakpoint. A second slope of exactly −1 leaves the
    /// outer balance equation unsolvable.
    pub fn equilibria(&self) -> Result<Vec<State3>> {
        let slopes = self.g.slopes();
        let bps = self.g.breakpoints();
        if slopes.len() > 1 && slopes[1] == -1.0 {
            return Err(Error::DegenerateParams(
                "outer segment slope is -1; outer fixed points escape to infinity".into(),
            ));
        }
        let mut points = vec![State3::ZERO];
        for j in 1..slopes.len() {
            let denom = 1.0 + slopes[j];
            if denom == 0.0 {
                continue;
            }
            let x = -self.g.intercepts()[j] / denom;
            let lo = bps[j - 1];
            let hi = bps.get(j).copied().unwrap_or(f64::INFINITY);
            if x > lo && x <= hi {
                points.push(State3::new(x, 0.0, -x));
                points.push(State3::new(-x, 0.0, x));
            }
        }
        Ok(points)
    }
}

/// The standard dimensionless nonlinearity.
pub fn standard_g() -> PwlOddFunction {
    PwlOddFunction::three_segment(-1.2, -0.6, 1.0).expect("standard nonlinearity is valid")
}

/// One op-amp nonlinear resistor stage: feedback resistor `r_f`, divider
/// resistors `r_a`/`r_b` (all kΩ) and the op amp's saturated output `u_sat`
/// (V). Its volt-ampere curve has a negative-resistance band of slope
/// `−r_b·r_f/r_a` between the inflection currents `±i_p` and slope `r_f`
/// outside it.
#[derive(Debug, Clone, PartialEq)]
pub struct OpAmpResistor {
    r_f: f64,
    r_a: f64,
    r_b: f64,
    u_sat: f64,
}

impl OpAmpResistor {
    pub fn new(r_f: f64, r_a: f64, r_b: f64, u_sat: f64) -> Result<Self> {
        for (name, v) in [("r_f", r_f), ("r_a", r_a), ("r_b", r_b), ("u_sat", u_sat)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParams(format!(
                    "{name} must be finite and > 0 (got {v})"
                )));
            }
        }
        Ok(OpAmpResistor { r_f, r_a, r_b, u_sat })
    }

    pub fn r_f(&self) -> f64 {
        self.r_f
    }

    pub fn r_a(&self) -> f64 {
        self.r_a
    }

    pub fn r_b(&self) -> f64 {
        self.r_b
    }

    pub fn u_sat(&self) -> f64 {
        self.u_sat
    }

    /// Slope of the linear (op amp unsaturated) band, kΩ.
    pub fn linear_slope(&self) -> f64 {
        -(self.r_b * self.r_f) / self.r_a
    }

    /// Inflection current `i_p = u_sat·r_a / (r_f·(r_a + r_b))` in mA, where
    /// the linear and saturated branches meet.
    pub fn band_edge(&self) -> f64 {
        self.u_sat * self.r_a / (self.r_f * (self.r_a + self.r_b))
    }

    /// Terminal voltage (V) for a current `i` (mA), by the three-branch law:
    /// `r_f·i ± u_sat` in saturation, `−(r_b·r_f/r_a)·i` in between.
    pub fn voltage(&self, i: f64) -> Result<f64> {
        if !i.is_finite() {
            return Err(Error::NonFinite("resistor current"));
        }
        let i_p = self.band_edge();
        Ok(if i <= -i_p {
            self.r_f * i + self.u_sat
        } else if i >= i_p {
            self.r_f * i - self.u_sat
        } else {
            self.linear_slope() * i
        })
    }

    /// The same law as a piecewise-linear curve (V over mA).
    pub fn pwl(&self) -> PwlOddFunction {
        PwlOddFunction::three_segment(self.linear_slope(), self.r_f, self.band_edge())
            .expect("a valid stage yields a valid curve")
    }
}

/// Physical circuit parameters in rescaled units: inductances `l1`, `l2`
/// (kH), capacitance `c` (mF), linear resistance `r0` (kΩ), and the two
/// op-amp stages whose series connection forms the combined nonlinear
/// resistor.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitParams {
    l1: f64,
    l2: f64,
    c: f64,
    r0: f64,
    resistor1: OpAmpResistor,
    resistor2: OpAmpResistor,
    /// Cached sum of the two stage curves, u(i1) in V over mA.
    u_curve: PwlOddFunction,
}

impl CircuitParams {
    pub fn new(
        l1: f64,
        l2: f64,
        c: f64,
        r0: f64,
        resistor1: OpAmpResistor,
        resistor2: OpAmpResistor,
    ) -> Result<Self> {
        for (name, v) in [("l1", l1), ("l2", l2), ("c", c), ("r0", r0)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParams(format!(
                    "{name} must be finite and > 0 (got {v})"
                )));
            }
        }
        let u_curve = resistor1.pwl().sum(&resistor2.pwl());
        Ok(CircuitParams {
            l1,
            l2,
            c,
            r0,
            resistor1,
            resistor2,
            u_curve,
        })
    }

    /// Same circuit with a different series resistance.
    pub fn with_r0(&self, r0: f64) -> Result<Self> {
        Self::new(
            self.l1,
            self.l2,
            self.c,
            r0,
            self.resistor1.clone(),
            self.resistor2.clone(),
        )
    }

    pub fn l1(&self) -> f64 {
        self.l1
    }

    pub fn l2(&self) -> f64 {
        self.l2
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    pub fn resistor1(&self) -> &OpAmpResistor {
        &self.resistor1
    }

    pub fn resistor2(&self) -> &OpAmpResistor {
        &self.resistor2
    }

    /// Series volt-ampere curve of the two stages as one five-segment
    /// element, V over mA.
    ///
    /// Requires stage 2 to saturate first (its band edge is the inner
    /// breakpoint); stage 1 must stay linear through the middle segments,
    /// which its higher supply guarantees in the reference network.
    pub fn combined_resistor(&self) -> Result<PwlOddFunction> {
        let inner = self.resistor2.band_edge();
        let outer = self.resistor1.band_edge();
        if inner >= outer {
            return Err(Error::NetworkConfig(format!(
                "stage 2 must saturate before stage 1 (band edges {inner} >= {outer} mA)"
            )));
        }
        Ok(self.u_curve.clone())
    }

    /// Right-hand side of the circuit equations in rescaled units
    /// (states in mA, mA, V; time in seconds):
    /// `l1·di1/dt = r0(i2−i1) − u(i1)`,
    /// `l2·di2/dt = r0(i1−i2) + uC`,
    /// `c·duC/dt = −i2`.
    pub fn derivative(&self, s: State3) -> State3 {
        let u = self.u_curve.value(s.x());
        State3::new(
            (self.r0 * (s.y() - s.x()) - u) / self.l1,
            (self.r0 * (s.x() - s.y()) + s.z()) / self.l2,
            -s.y() / self.c,
        )
    }
}
