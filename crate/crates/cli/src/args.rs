//! Command-line surface. Configuration is flags-only so `--help` documents
//! the whole interface; `--dump-config` echoes what the flags resolved to.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "chua-dual",
    version,
    about = "Dual (current-controlled) Chua oscillator: simulate, sweep, synthesize",
    propagate_version = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate the oscillator and export the trajectory.
    Simulate(Box<SimulateArgs>),
    /// Classify attractors across a parameter or initial-voltage range.
    #[command(subcommand)]
    Sweep(SweepCommand),
    /// Solve the two-stage resistor network for requested segment slopes.
    Synthesize(SynthesizeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// The dimensionless equations in (x, y, z).
    Dimensionless,
    /// The circuit equations in (i1 mA, i2 mA, uC V), time in seconds.
    Physical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProjectionArg {
    Xy,
    Xz,
    Yz,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum, default_value_t = Mode::Dimensionless)]
    pub mode: Mode,

    /// Component preset: `multisim` or `experimental`.
    #[arg(long)]
    pub preset: Option<String>,

    /// Dimensionless parameter (explicit alternative to --preset; requires --beta).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Dimensionless parameter (requires --alpha).
    #[arg(long)]
    pub beta: Option<f64>,
    /// Inner slope of the three-segment nonlinearity (with --alpha/--beta).
    #[arg(long, default_value_t = -1.2, allow_hyphen_values = true)]
    pub m1: f64,
    /// Middle slope of the three-segment nonlinearity (with --alpha/--beta).
    #[arg(long, default_value_t = -0.6, allow_hyphen_values = true)]
    pub m0: f64,
    /// Breakpoint of the three-segment nonlinearity (with --alpha/--beta).
    #[arg(long, default_value_t = 1.0)]
    pub g_breakpoint: f64,

    /// Inductance L1 in henries (explicit circuit; requires --l2, --cap, --r0).
    #[arg(long)]
    pub l1: Option<f64>,
    /// Inductance L2 in henries.
    #[arg(long)]
    pub l2: Option<f64>,
    /// Capacitance in farads.
    #[arg(long)]
    pub cap: Option<f64>,
    /// Series resistance in ohms: part of an explicit circuit, or alone as a
    /// preset override.
    #[arg(long)]
    pub r0: Option<f64>,
    /// Use the five-segment nonlinearity u/r0 of the circuit network for a
    /// dimensionless run (physical runs always use it).
    #[arg(long)]
    pub five_segment: bool,

    /// Initial x (dimensionless mode). Default 1e-3: the exact origin is an
    /// equilibrium a deterministic integrator never leaves.
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<f64>,
    /// Initial y (dimensionless mode).
    #[arg(long, allow_hyphen_values = true)]
    pub y0: Option<f64>,
    /// Initial z (dimensionless mode).
    #[arg(long, allow_hyphen_values = true)]
    pub z0: Option<f64>,
    /// Initial inductor-1 current in mA (physical mode). Default 1e-3.
    #[arg(long, allow_hyphen_values = true)]
    pub i10: Option<f64>,
    /// Initial inductor-2 current in mA (physical mode).
    #[arg(long, allow_hyphen_values = true)]
    pub i20: Option<f64>,
    /// Initial capacitor voltage in volts (physical mode).
    #[arg(long, allow_hyphen_values = true)]
    pub uc0: Option<f64>,

    /// Integration horizon in τ; physical runs map it through seconds-per-τ.
    #[arg(long, default_value_t = 500.0)]
    pub tau_end: f64,
    /// Integration step in τ.
    #[arg(long, default_value_t = 0.005)]
    pub h: f64,
    /// Record every k-th step.
    #[arg(long, default_value_t = 1)]
    pub stride: usize,
    /// Divergence guard as a dimensionless max-norm.
    #[arg(long, default_value_t = 100.0)]
    pub blowup: f64,

    /// Write the trajectory CSV here (written atomically; omit for no file).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write an SVG phase portrait here.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ProjectionArg::Xy)]
    pub projection: ProjectionArg,
    /// SVG canvas as WIDTHxHEIGHT pixels.
    #[arg(long, default_value = "800x600")]
    pub size: String,

    /// Estimate the largest Lyapunov exponent for the summary line.
    #[arg(long)]
    pub lyapunov: bool,
    /// Echo the resolved run configuration before running.
    #[arg(long)]
    pub dump_config: bool,
}

#[derive(Debug, Subcommand)]
pub enum SweepCommand {
    /// Sweep the series resistance R0, bounds in ohms.
    R0(SweepArgs),
    /// Sweep the capacitor's initial voltage uC(0), bounds in volts.
    Uc0(SweepArgs),
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub from: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub to: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub step: f64,
    /// Base circuit preset.
    #[arg(long, default_value = "multisim")]
    pub preset: String,
    /// Integration horizon per point, τ.
    #[arg(long, default_value_t = 500.0)]
    pub tau_end: f64,
    /// Integration step, τ.
    #[arg(long, default_value_t = 0.005)]
    pub h: f64,
    /// Gate the chaos verdict on a per-point Lyapunov estimate.
    #[arg(long)]
    pub lyapunov: bool,
    /// Write the sweep CSV here (omit to print it to stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SynthesizeArgs {
    /// Middle-segment slope (dimensionless).
    #[arg(long, default_value_t = -0.6, allow_hyphen_values = true)]
    pub m0: f64,
    /// Inner-segment slope (dimensionless).
    #[arg(long, default_value_t = -1.2, allow_hyphen_values = true)]
    pub m1: f64,
    /// Outer (bounding) slope, > 0.
    #[arg(long, default_value_t = 0.6)]
    pub s_out: f64,
    /// Series resistance target in kΩ.
    #[arg(long, default_value_t = 5.0)]
    pub r0: f64,
    /// Inner breakpoint in mA.
    #[arg(long, default_value_t = 1.0)]
    pub i_break: f64,
    /// Stage-1 share of the total feedback resistance, in (0, 1).
    #[arg(long, default_value_t = 0.5)]
    pub rf_split: f64,
    /// Stage-1 divider input, kΩ.
    #[arg(long, default_value_t = 6.0)]
    pub ra1: f64,
    /// Stage-2 divider input, kΩ.
    #[arg(long, default_value_t = 10.0)]
    pub ra2: f64,
    /// Supply-to-saturation headroom, V.
    #[arg(long, default_value_t = 1.6)]
    pub v_headroom: f64,
    /// Stage-1 supply, V.
    #[arg(long, default_value_t = 18.0)]
    pub vcc1: f64,
    /// Re-derive the segment report from the solved components and print
    /// PASS or FAIL.
    #[arg(long)]
    pub verify: bool,
}
