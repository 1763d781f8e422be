//! Deterministic fixed-step integration.
//!
//! The classical fourth-order Runge–Kutta scheme with a fixed step keeps
//! runs bit-reproducible and lets the dimensionless and physical routes be
//! compared structurally. The vector field is globally Lipschitz (piecewise
//! linear and continuous), so no event detection is done at segment
//! boundaries; accuracy degrades locally at a crossing but the scheme stays
//! stable.

use crate::error::{Error, Result};
use crate::state::State3;

/// Fixed-step integration settings. Time units follow the vector field being
/// integrated: τ for the dimensionless equations, seconds for the circuit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationSettings {
    step: f64,
    duration: f64,
    record_stride: usize,
    blowup_norm: f64,
}

impl IntegrationSettings {
    pub fn new(step: f64, duration: f64, record_stride: usize, blowup_norm: f64) -> Result<Self> {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::InvalidSettings(format!("step must be > 0, got {step}")));
        }
        if !(duration.is_finite() && duration >= step) {
            return Err(Error::InvalidSettings(format!(
                "duration must be at least one step (step={step}, duration={duration})"
            )));
        }
        if record_stride == 0 {
            return Err(Error::InvalidSettings("record stride must be >= 1".into()));
        }
        if !(blowup_norm.is_finite() && blowup_norm > 0.0) {
            return Err(Error::InvalidSettings(format!(
                "blowup norm must be > 0, got {blowup_norm}"
            )));
        }
        Ok(IntegrationSettings {
            step,
            duration,
            record_stride,
            blowup_norm,
        })
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    pub fn record_stride(&self) -> usize {
        self.record_stride
    }

    pub fn blowup_norm(&self) -> f64 {
        self.blowup_norm
    }

    /// Settings for the physical field equivalent to these dimensionless
    /// ones: times scale by seconds-per-τ, the divergence guard by the
    /// largest state-mapping factor (uC = r0·z).
    pub fn scaled(&self, time_factor: f64, state_factor: f64) -> Result<Self> {
        Self::new(
            self.step * time_factor,
            self.duration * time_factor,
            self.record_stride,
            self.blowup_norm * state_factor,
        )
    }
}

impl Default for IntegrationSettings {
    /// τ step 0.005, horizon 500 τ, every step recorded, guard at max-norm
    /// 100 (the reference attractor lives within |x| ≲ 3).
    fn default() -> Self {
        IntegrationSettings {
            step: 0.005,
            duration: 500.0,
            record_stride: 1,
            blowup_norm: 100.0,
        }
    }
}

/// Why a trajectory ended.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Termination {
    Completed,
    /// The divergence guard fired (or the state went non-finite) at `time`.
    Diverged { time: f64 },
}

/// A recorded trajectory: strictly increasing, uniformly spaced sample times
/// and one state per time.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    times: Vec<f64>,
    states: Vec<State3>,
    termination: Termination,
}

impl Trajectory {
    pub fn from_parts(times: Vec<f64>, states: Vec<State3>, termination: Termination) -> Result<Self> {
        if times.len() != states.len() {
            return Err(Error::InvalidSettings(format!(
                "times ({}) and states ({}) must have equal length",
                times.len(),
                states.len()
            )));
        }
        if times.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSettings("times must be strictly increasing".into()));
        }
        Ok(Trajectory {
            times,
            states,
            termination,
        })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[State3] {
        &self.states
    }

    pub fn termination(&self) -> Termination {
        self.termination
    }

    pub fn diverged(&self) -> bool {
        matches!(self.termination, Termination::Diverged { .. })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<(f64, State3)> {
        Some((*self.times.last()?, *self.states.last()?))
    }
}

/// One classical RK4 update. Deterministic: identical inputs give
/// bit-identical outputs.
pub fn rk4_step<F: Fn(State3) -> State3>(field: F, s: State3, h: f64) -> Result<State3> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidSettings(format!("step must be > 0, got {h}")));
    }
    let k1 = field(s);
    let k2 = field(s + k1 * (0.5 * h));
    let k3 = field(s + k2 * (0.5 * h));
    let k4 = field(s + k3 * h);
    for k in [&k1, &k2, &k3, &k4] {
        if !k.is_finite() {
            return Err(Error::Overflow("non-finite stage derivative in rk4 step".into()));
        }
    }
    let next = s + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    if !next.is_finite() {
        return Err(Error::Overflow("non-finite state after rk4 step".into()));
    }
    Ok(next)
}

/// Integrates `field` from `s0`, recording every `record_stride`-th step
/// (including the initial state). Stops early with a diverged flag when the
/// max-norm guard fires or the state goes non-finite.
pub fn integrate<F: Fn(State3) -> State3>(
    field: F,
    s0: State3,
    settings: &IntegrationSettings,
) -> Trajectory {
    let n_steps = (settings.duration / settings.step).round().max(1.0) as u64;
    let stride = settings.record_stride as u64;
    let mut times = Vec::with_capacity((n_steps / stride + 2) as usize);
    let mut states = Vec::with_capacity((n_steps / stride + 2) as usize);
    times.push(0.0);
    states.push(s0);
    if !s0.is_finite() || s0.max_norm() > settings.blowup_norm {
        return Trajectory {
            times,
            states,
            termination: Termination::Diverged { time: 0.0 },
        };
    }
    let mut s = s0;
    for k in 1..=n_steps {
        match rk4_step(&field, s, settings.step) {
            Ok(next) if next.is_finite() && next.max_norm() <= settings.blowup_norm => s = next,
            _ => {
                return Trajectory {
                    times,
                    states,
                    termination: Termination::Diverged {
                        time: k as f64 * settings.step,
                    },
                }
            }
        }
        if k % stride == 0 {
            times.push(k as f64 * settings.step);
            states.push(s);
        }
    }
    Trajectory {
        times,
        states,
        termination: Termination::Completed,
    }
}
