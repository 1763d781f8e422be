//! Command-line interface for the dual Chua oscillator toolkit: trajectory
//! simulation with CSV/SVG export, chaos-window sweeps, and resistor-network
//! synthesis.

pub mod args;
pub mod commands;
pub mod csv;
pub mod error;
pub mod svg;

pub use csv::{export_csv, CsvMode};
pub use error::CliError;
pub use svg::{render_svg, Projection};
