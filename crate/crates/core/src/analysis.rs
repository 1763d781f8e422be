//! Attractor classification, largest-Lyapunov-exponent estimation, and
//! parameter/initial-condition sweeps.
//!
//! Classification replaces visual judgement with numeric proxies: wells
//! around the symmetric outer fixed points, transition counting between
//! them, and peak-to-peak amplitude over the final window. The thresholds
//! are documented defaults on [`ClassifyOptions`] and can be overridden.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::integrate::{integrate, IntegrationSettings};
use crate::model::{ChuaParams, CircuitParams};
use crate::state::State3;
use crate::synthesis::{derive_dimensionless, dimensionless_params};

/// Attractor classes distinguished by the well proxies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttractorLabel {
    /// The trajectory keeps switching between both wells.
    DoubleScroll,
    /// Sustained oscillation confined to one well.
    SingleScroll,
    /// The final window is essentially a point.
    FixedPoint,
    /// The divergence guard fired.
    Diverged,
    Undetermined,
}

impl AttractorLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            AttractorLabel::DoubleScroll => "double-scroll",
            AttractorLabel::SingleScroll => "single-scroll",
            AttractorLabel::FixedPoint => "fixed-point",
            AttractorLabel::Diverged => "diverged",
            AttractorLabel::Undetermined => "undetermined",
        }
    }
}

/// Numbers the label was decided on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evidence {
    /// Switches between opposite wells after warmup.
    pub transitions: usize,
    /// Peak-to-peak x amplitude over the final window.
    pub final_amplitude: f64,
    /// Fraction of post-warmup samples inside the +x well.
    pub occupancy_plus: f64,
    /// Fraction of post-warmup samples inside the −x well.
    pub occupancy_minus: f64,
    /// |x| of the outer fixed points (0 when none exist).
    pub well_center: f64,
    pub well_radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classification {
    pub label: AttractorLabel,
    pub evidence: Evidence,
}

/// Classification thresholds (all documented defaults).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions {
    /// Leading fraction of samples discarded as transient.
    pub warmup_fraction: f64,
    /// Well radius as a fraction of the outer fixed-point abscissa.
    pub well_radius_factor: f64,
    /// Minimum well transitions for a double scroll.
    pub min_transitions: usize,
    /// Minimum final-window amplitude (fraction of x_e) for a single scroll.
    pub min_scroll_amplitude: f64,
    /// Maximum final-window amplitude (fraction of x_e) for a fixed point.
    pub fixed_point_amplitude: f64,
    /// Trailing fraction of samples forming the final window.
    pub final_window_fraction: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            warmup_fraction: 0.3,
            well_radius_factor: 0.5,
            min_transitions: 5,
            min_scroll_amplitude: 0.1,
            fixed_point_amplitude: 1e-3,
            final_window_fraction: 0.25,
        }
    }
}

/// Labels a trajectory given the fixed points of its vector field.
///
/// Wells are x-neighbourhoods of the outer fixed points `±x_e` with radius
/// `well_radius_factor·x_e`. A double scroll switches wells at least
/// `min_transitions` times; a single scroll never leaves its well's side and
/// keeps a sustained amplitude; a fixed point has essentially no final
/// amplitude. Sweeps of the circuit reuse this unchanged because `x = i1`
/// numerically in rescaled units.
pub fn classify(
    traj: &crate::integrate::Trajectory,
    equilibria: &[State3],
    opts: &ClassifyOptions,
) -> Result<Classification> {
    let states = traj.states();
    if states.is_empty() {
        return Err(Error::EmptyTrajectory);
    }
    let n = states.len();
    let warm = (((n as f64) * opts.warmup_fraction) as usize).min(n - 1);
    let post = &states[warm..];

    let x_e = equilibria.iter().map(|p| p.x().abs()).fold(0.0, f64::max);
    let radius = opts.well_radius_factor * x_e;
    let mut transitions = 0usize;
    let mut in_plus = 0usize;
    let mut in_minus = 0usize;
    if x_e > 0.0 {
        let mut last: i8 = 0;
        for s in post {
            let well: i8 = if (s.x() - x_e).abs() <= radius {
                1
            } else if (s.x() + x_e).abs() <= radius {
                -1
            } else {
                0
            };
            if well == 1 {
                in_plus += 1;
            } else if well == -1 {
                in_minus += 1;
            }
            if well != 0 {
                if last != 0 && well != last {
                    transitions += 1;
                }
                last = well;
            }
        }
    }

    let window = (((n as f64) * opts.final_window_fraction) as usize).max(1);
    let tail = &states[n - window..];
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for s in tail {
        lo = lo.min(s.x());
        hi = hi.max(s.x());
    }
    let final_amplitude = hi - lo;

    let evidence = Evidence {
        transitions,
        final_amplitude,
        occupancy_plus: in_plus as f64 / post.len() as f64,
        occupancy_minus: in_minus as f64 / post.len() as f64,
        well_center: x_e,
        well_radius: radius,
    };

    // Amplitude thresholds are relative to x_e; without outer fixed points
    // fall back to an absolute scale of 1.
    let amp_scale = if x_e > 0.0 { x_e } else { 1.0 };
    let one_well_only = (in_plus > 0) != (in_minus > 0);
    let label = if traj.diverged() {
        AttractorLabel::Diverged
    } else if x_e > 0.0 && transitions >= opts.min_transitions {
        AttractorLabel::DoubleScroll
    } else if x_e > 0.0
        && transitions == 0
        && one_well_only
        && final_amplitude >= opts.min_scroll_amplitude * amp_scale
    {
        AttractorLabel::SingleScroll
    } else if final_amplitude < opts.fixed_point_amplitude * amp_scale {
        AttractorLabel::FixedPoint
    } else {
        AttractorLabel::Undetermined
    };

    Ok(Classification { label, evidence })
}

/// Jacobian of the dimensionless field at `s`; the only state dependence is
/// the active segment slope of the nonlinearity.
pub fn jacobian_dimensionless(p: &ChuaParams, s: State3) -> [[f64; 3]; 3] {
    let gp = p.g().slope_at(s.x());
    [
        [-p.alpha() * (1.0 + gp), p.alpha(), 0.0],
        [1.0, -1.0, 1.0],
        [0.0, -p.beta(), 0.0],
    ]
}

fn jac_mul(j: &[[f64; 3]; 3], v: State3) -> State3 {
    State3::new(
        j[0][0] * v[0] + j[0][1] * v[1] + j[0][2] * v[2],
        j[1][0] * v[0] + j[1][1] * v[1] + j[1][2] * v[2],
        j[2][0] * v[0] + j[2][1] * v[1] + j[2][2] * v[2],
    )
}

/// Settings for the tangent-vector estimate of the largest Lyapunov
/// exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovOptions {
    pub step: f64,
    /// Total integration horizon, τ.
    pub total_tau: f64,
    /// Log growth before this time is discarded.
    pub warmup_tau: f64,
    /// Tangent renormalization interval, τ.
    pub renorm_interval: f64,
    /// Number of blocks for the standard-error estimate.
    pub blocks: usize,
    pub blowup_norm: f64,
}

impl Default for LyapunovOptions {
    fn default() -> Self {
        LyapunovOptions {
            step: 0.005,
            total_tau: 2000.0,
            warmup_tau: 100.0,
            renorm_interval: 1.0,
            blocks: 3,
            blowup_norm: 100.0,
        }
    }
}

/// Largest Lyapunov exponent per unit τ with a block standard error.
#[derive(Debug, Clone, PartialEq)]
pub struct LyapunovEstimate {
    pub lambda: f64,
    pub std_error: f64,
    /// Per-block estimates (contiguous post-warmup intervals).
    pub block_lambdas: Vec<f64>,
}

/// Estimates the largest Lyapunov exponent by co-integrating a tangent
/// vector through the Jacobian along the orbit and renormalizing it every
/// `renorm_interval`; the exponent is the post-warmup average log growth per
/// unit time. The piecewise-linear Jacobian is exact, so no
/// trajectory-separation surrogate is needed.
pub fn lyapunov_max(p: &ChuaParams, s0: State3, opts: &LyapunovOptions) -> Result<LyapunovEstimate> {
    if !(opts.step > 0.0 && opts.renorm_interval >= opts.step) {
        return Err(Error::InvalidSettings(
            "need step > 0 and renorm_interval >= step".into(),
        ));
    }
    if opts.blocks == 0 {
        return Err(Error::InvalidSettings("need at least one block".into()));
    }
    if !(opts.total_tau > opts.warmup_tau && opts.warmup_tau >= 0.0) {
        return Err(Error::InvalidSettings(
            "need total_tau > warmup_tau >= 0".into(),
        ));
    }
    let steps_per_renorm = (opts.renorm_interval / opts.step).round().max(1.0) as usize;
    let interval = steps_per_renorm as f64 * opts.step;
    let renorms = (opts.total_tau / interval).round().max(1.0) as usize;

    let mut s = s0;
    let mut v = State3::new(1.0, 0.0, 0.0);
    let mut logs: Vec<f64> = Vec::with_capacity(renorms);
    for k in 0..renorms {
        for _ in 0..steps_per_renorm {
            (s, v) = tangent_rk4_step(p, s, v, opts.step)?;
        }
        if s.max_norm() > opts.blowup_norm {
            return Err(Error::Diverged(format!(
                "orbit left the guard region at τ ≈ {:.1}",
                (k + 1) as f64 * interval
            )));
        }
        let r = v.norm();
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::Overflow("tangent vector norm degenerated".into()));
        }
        v = v * (1.0 / r);
        if (k + 1) as f64 * interval > opts.warmup_tau {
            logs.push(r.ln());
        }
    }
    if logs.len() < opts.blocks {
        return Err(Error::InvalidSettings(format!(
            "only {} renormalizations after warmup for {} blocks",
            logs.len(),
            opts.blocks
        )));
    }

    let lambda = logs.iter().sum::<f64>() / (logs.len() as f64 * interval);
    let per_block = logs.len() / opts.blocks;
    let mut block_lambdas = Vec::with_capacity(opts.blocks);
    for b in 0..opts.blocks {
        let start = b * per_block;
        let end = if b + 1 == opts.blocks { logs.len() } else { start + per_block };
        let chunk = &logs[start..end];
        block_lambdas.push(chunk.iter().sum::<f64>() / (chunk.len() as f64 * interval));
    }
    let std_error = if opts.blocks > 1 {
        let mean = block_lambdas.iter().sum::<f64>() / opts.blocks as f64;
        let var = block_lambdas
            .iter()
            .map(|l| (l - mean) * (l - mean))
            .sum::<f64>()
            / (opts.blocks - 1) as f64;
        (var / opts.blocks as f64).sqrt()
    } else {
        0.0
    };
    Ok(LyapunovEstimate {
        lambda,
        std_error,
        block_lambdas,
    })
}

/// One RK4 update of the state together with its tangent vector; the
/// tangent's derivative is the Jacobian at the same stage state.
fn tangent_rk4_step(p: &ChuaParams, s: State3, v: State3, h: f64) -> Result<(State3, State3)> {
    let f = |s: State3, v: State3| {
        let ds = p.derivative(s);
        let dv = jac_mul(&jacobian_dimensionless(p, s), v);
        (ds, dv)
    };
    let (ks1, kv1) = f(s, v);
    let (ks2, kv2) = f(s + ks1 * (0.5 * h), v + kv1 * (0.5 * h));
    let (ks3, kv3) = f(s + ks2 * (0.5 * h), v + kv2 * (0.5 * h));
    let (ks4, kv4) = f(s + ks3 * h, v + kv3 * h);
    let s_next = s + (ks1 + ks2 * 2.0 + ks3 * 2.0 + ks4) * (h / 6.0);
    let v_next = v + (kv1 + kv2 * 2.0 + kv3 * 2.0 + kv4) * (h / 6.0);
    if !s_next.is_finite() || !v_next.is_finite() {
        return Err(Error::Overflow("non-finite tangent integration step".into()));
    }
    Ok((s_next, v_next))
}

/// Outcome at one sweep point.
#[derive(Debug, Clone, PartialEq)]
pub enum PointOutcome {
    Evaluated {
        classification: Classification,
        lambda: Option<LyapunovEstimate>,
        /// Scroll-shaped and, when a Lyapunov estimate was requested, with
        /// an exponent above the chaos threshold.
        chaotic: bool,
    },
    /// The point could not be evaluated; the sweep continues.
    Failed(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub value: f64,
    pub outcome: PointOutcome,
}

impl SweepPoint {
    pub fn label(&self) -> Option<AttractorLabel> {
        match &self.outcome {
            PointOutcome::Evaluated { classification, .. } => Some(classification.label),
            PointOutcome::Failed(_) => None,
        }
    }

    pub fn lambda(&self) -> Option<f64> {
        match &self.outcome {
            PointOutcome::Evaluated { lambda, .. } => lambda.as_ref().map(|l| l.lambda),
            PointOutcome::Failed(_) => None,
        }
    }

    pub fn is_chaotic(&self) -> bool {
        matches!(self.outcome, PointOutcome::Evaluated { chaotic: true, .. })
    }
}

/// Ordered sweep outcomes plus the settings they were produced with.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    /// Swept parameter: `"r0_kohm"` or `"uc0_volts"`.
    pub parameter: &'static str,
    pub points: Vec<SweepPoint>,
    pub options: SweepOptions,
}

/// Settings shared by the sweep drivers. The integration settings are the
/// dimensionless reference; each circuit point maps them through its own
/// seconds-per-τ factor.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepOptions {
    pub settings: IntegrationSettings,
    pub classify: ClassifyOptions,
    /// When set, estimate the exponent at every point.
    pub lyapunov: Option<LyapunovOptions>,
    /// Scroll-shaped points count as chaotic only above this exponent
    /// (per unit τ) when an estimate is available.
    pub lyapunov_threshold: f64,
    /// Perturbation added to the first state component so runs do not start
    /// on the exact origin equilibrium.
    pub perturbation: f64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            settings: IntegrationSettings::default(),
            classify: ClassifyOptions::default(),
            lyapunov: None,
            lyapunov_threshold: 0.01,
            perturbation: 1e-3,
        }
    }
}

fn sweep_values(from: f64, to: f64, step: f64) -> Result<Vec<f64>> {
    if !(step.is_finite() && step > 0.0) || !from.is_finite() || !to.is_finite() {
        return Err(Error::InvalidSettings(format!(
            "sweep needs finite bounds and step > 0 (from={from}, to={to}, step={step})"
        )));
    }
    let mut values = Vec::new();
    let mut k = 0u64;
    loop {
        let v = from + k as f64 * step;
        if v > to + step * 1e-9 {
            break;
        }
        values.push(v);
        k += 1;
    }
    Ok(values)
}

/// Evaluates one circuit at one capacitor initial voltage: integrate the
/// circuit equations from `(ε, 0, uc0)`, classify against the fixed points
/// of the dimensionless equivalent (x = i1 numerically), and optionally
/// estimate the exponent on the mapped initial condition.
fn evaluate_point(circuit: &CircuitParams, uc0: f64, opts: &SweepOptions) -> Result<PointOutcome> {
    let derived = derive_dimensionless(circuit);
    let params = dimensionless_params(circuit)?;
    let equilibria = params.equilibria()?;
    let settings = opts.settings.scaled(derived.time_scale, circuit.r0().max(1.0))?;
    let s0 = State3::new(opts.perturbation, 0.0, uc0);
    let traj = integrate(|s| circuit.derivative(s), s0, &settings);
    let classification = classify(&traj, &equilibria, &opts.classify)?;

    let lambda = match (&opts.lyapunov, classification.label) {
        (Some(_), AttractorLabel::Diverged) => None,
        (Some(lopts), _) => {
            let z0 = uc0 / circuit.r0();
            Some(lyapunov_max(
                &params,
                State3::new(opts.perturbation, 0.0, z0),
                lopts,
            )?)
        }
        (None, _) => None,
    };
    let scroll = matches!(
        classification.label,
        AttractorLabel::DoubleScroll | AttractorLabel::SingleScroll
    );
    let chaotic = scroll
        && lambda
            .as_ref()
            .is_none_or(|l| l.lambda > opts.lyapunov_threshold);
    Ok(PointOutcome::Evaluated {
        classification,
        lambda,
        chaotic,
    })
}

/// Sweeps the series resistance (kΩ). Every quantity r0 touches is rebuilt
/// per point: β, the seconds-per-τ factor and the dimensionless segment
/// slopes u/r0 all move with it while the resistor network stays fixed.
pub fn sweep_r0(
    from_kohm: f64,
    to_kohm: f64,
    step_kohm: f64,
    base: &CircuitParams,
    opts: &SweepOptions,
) -> Result<SweepResult> {
    let values = sweep_values(from_kohm, to_kohm, step_kohm)?;
    let points = values
        .par_iter()
        .map(|&r0| {
            let outcome = base
                .with_r0(r0)
                .and_then(|c| evaluate_point(&c, 0.0, opts))
                .unwrap_or_else(|e| PointOutcome::Failed(e.to_string()));
            SweepPoint { value: r0, outcome }
        })
        .collect();
    Ok(SweepResult {
        parameter: "r0_kohm",
        points,
        options: opts.clone(),
    })
}

/// Sweeps the capacitor's initial voltage (V) with both inductor currents
/// starting at zero (plus the default perturbation on i1).
pub fn sweep_ic(
    from_volts: f64,
    to_volts: f64,
    step_volts: f64,
    base: &CircuitParams,
    opts: &SweepOptions,
) -> Result<SweepResult> {
    let values = sweep_values(from_volts, to_volts, step_volts)?;
    let points = values
        .par_iter()
        .map(|&uc0| {
            let outcome = evaluate_point(base, uc0, opts)
                .unwrap_or_else(|e| PointOutcome::Failed(e.to_string()));
            SweepPoint { value: uc0, outcome }
        })
        .collect();
    Ok(SweepResult {
        parameter: "uc0_volts",
        points,
        options: opts.clone(),
    })
}

/// Longest contiguous run of points satisfying `pred`, as the (first, last)
/// parameter values.
pub fn longest_band<F: Fn(&SweepPoint) -> bool>(
    result: &SweepResult,
    pred: F,
) -> Option<(f64, f64)> {
    let mut best: Option<(usize, usize)> = None;
    let mut run_start: Option<usize> = None;
    for (i, point) in result.points.iter().enumerate() {
        if pred(point) {
            let start = *run_start.get_or_insert(i);
            if best.is_none_or(|(b0, b1)| i - start > b1 - b0) {
                best = Some((start, i));
            }
        } else {
            run_start = None;
        }
    }
    best.map(|(a, b)| (result.points[a].value, result.points[b].value))
}

/// Longest contiguous run with the given label.
pub fn label_band(result: &SweepResult, label: AttractorLabel) -> Option<(f64, f64)> {
    longest_band(result, |p| p.label() == Some(label))
}

/// Longest contiguous run of chaotic points.
pub fn chaotic_band(result: &SweepResult) -> Option<(f64, f64)> {
    longest_band(result, |p| p.is_chaotic())
}
