use std::fmt;

/// CLI failure with a stable exit-code contract: 0 success, 1 usage or
/// configuration problems, 2 numerical failures (divergence, infeasible
/// synthesis).
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numerical(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Numerical(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<chua_dual::Error> for CliError {
    fn from(e: chua_dual::Error) -> Self {
        use chua_dual::Error as E;
        match e {
            E::Infeasible(_)
            | E::Overflow(_)
            | E::Diverged(_)
            | E::DegenerateParams(_)
            | E::NetworkConfig(_) => CliError::Numerical(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}
