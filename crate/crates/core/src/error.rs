use thiserror::Error;

/// Errors produced by the model, synthesis, integration and analysis layers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An input that must be finite was NaN or infinite.
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    /// A piecewise-linear function violated its construction rules.
    #[error("invalid piecewise-linear function: {0}")]
    InvalidPwl(String),

    /// A parameter set violated its invariants.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Parameters for which the requested quantity is undefined.
    #[error("degenerate parameters: {0}")]
    DegenerateParams(String),

    /// The two op-amp stages saturate in an order that admits no
    /// five-segment combined curve.
    #[error("network configuration: {0}")]
    NetworkConfig(String),

    /// A synthesis request has no all-positive resistance solution.
    #[error("infeasible synthesis request: {0}")]
    Infeasible(String),

    /// Unknown parameter preset name.
    #[error("unknown preset `{0}` (expected `multisim` or `experimental`)")]
    UnknownPreset(String),

    /// An integration step produced a non-finite state.
    #[error("numerical overflow: {0}")]
    Overflow(String),

    /// Invalid integration or analysis settings.
    #[error("invalid settings: {0}")]
    InvalidSettings(String),

    /// An operation that needs trajectory samples received none.
    #[error("empty trajectory")]
    EmptyTrajectory,

    /// A trajectory diverged where a bounded one is required.
    #[error("trajectory diverged: {0}")]
    Diverged(String),
}

pub type Result<T> = std::result::Result<T, Error>;
