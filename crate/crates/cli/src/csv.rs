//! Trajectory CSV export.
//!
//! UTF-8, LF line endings, `.` decimal separator. Floats are written with
//! Rust's shortest round-trip formatting, so parsing the file recovers the
//! exact values. The final line is a `#`-prefixed status comment.

use std::fmt::Write;

use chua_dual::{Termination, Trajectory};

use crate::error::CliError;

/// Column set for the two state spaces. Physical rows keep time in seconds
/// (time is not rescaled) while the states use rescaled units.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CsvMode {
    Dimensionless,
    Physical,
}

impl CsvMode {
    pub fn header(self) -> &'static str {
        match self {
            CsvMode::Dimensionless => "tau,x,y,z",
            CsvMode::Physical => "t_s,i1_mA,i2_mA,uC_V",
        }
    }
}

/// Renders a non-empty trajectory as CSV text, rows in time order, with a
/// trailing status comment.
pub fn export_csv(traj: &Trajectory, mode: CsvMode) -> Result<String, CliError> {
    if traj.is_empty() {
        return Err(CliError::Usage("cannot export an empty trajectory".into()));
    }
    let mut out = String::with_capacity(traj.len() * 48 + 64);
    out.push_str(mode.header());
    out.push('\n');
    for (t, s) in traj.times().iter().zip(traj.states()) {
        writeln!(out, "{},{},{},{}", t, s.x(), s.y(), s.z()).expect("writing to a string");
    }
    match traj.termination() {
        Termination::Completed => out.push_str("# status: completed\n"),
        Termination::Diverged { time } => {
            writeln!(out, "# status: diverged at {time}").expect("writing to a string")
        }
    }
    Ok(out)
}
