//! Simulation and analysis toolkit for the dual (current-controlled) Chua
//! chaotic oscillator.
//!
//! The circuit realizes the classic double-scroll dynamics with two op-amp
//! current-controlled nonlinear resistors in series, one linear resistor,
//! one capacitor and two inductors. This crate evaluates and integrates both
//! the dimensionless equations and the physical circuit equations in
//! rescaled units (mA / kΩ / kH / mF / V), synthesizes and verifies the
//! resistor network behind the five-segment nonlinearity, classifies
//! attractors, estimates the largest Lyapunov exponent, and sweeps the
//! series resistance and the capacitor's initial voltage to map the chaotic
//! windows.
//!
//! Everything is deterministic: fixed-step integration, no random numbers,
//! pure functions over immutable parameter sets.

pub mod analysis;
pub mod error;
pub mod integrate;
pub mod model;
pub mod pwl;
pub mod state;
pub mod synthesis;

pub use analysis::{
    chaotic_band, classify, jacobian_dimensionless, label_band, longest_band, lyapunov_max,
    sweep_ic, sweep_r0, AttractorLabel, Classification, ClassifyOptions, Evidence,
    LyapunovEstimate, LyapunovOptions, PointOutcome, SweepOptions, SweepPoint, SweepResult,
};
pub use error::{Error, Result};
pub use integrate::{integrate, rk4_step, IntegrationSettings, Termination, Trajectory};
pub use model::{standard_g, ChuaParams, CircuitParams, OpAmpResistor};
pub use pwl::PwlOddFunction;
pub use state::State3;
pub use synthesis::{
    derive_dimensionless, dimensionless_params, preset, rescale, synthesize_network,
    verify_network, DerivedDimensionless, NetworkReport, Quantity, RescaledValue,
    SynthesisRequest, SynthesisResult, DEFAULT_VCC1, DEFAULT_V_HEADROOM,
};
