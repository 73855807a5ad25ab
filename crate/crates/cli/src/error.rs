use std::fmt;

use gekde::Error;

/// Exit status for input validation failures.
pub const EXIT_INPUT: u8 = 2;
/// Exit status for evaluation points outside a kernel's domain.
pub const EXIT_DOMAIN: u8 = 3;
/// Exit status for quadrature, root-finding and optimisation failures.
pub const EXIT_NUMERIC: u8 = 4;
pub const EXIT_IO: u8 = 1;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    pub fn io(context: &str, err: impl fmt::Display) -> Self {
        Self {
            code: EXIT_IO,
            message: format!("{context}: {err}"),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub fn exit_code(err: &Error) -> u8 {
    match err.root() {
        Error::BoundaryDegeneracy { .. } => EXIT_DOMAIN,
        Error::Convergence { .. }
        | Error::Integration { .. }
        | Error::Optimization(_)
        | Error::Coverage { .. } => EXIT_NUMERIC,
        _ => EXIT_INPUT,
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        Self {
            code: exit_code(&err),
            message: err.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
