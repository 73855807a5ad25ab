use thiserror::Error;

use crate::kernels::KernelId;

/// Errors raised by the estimation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: argument {value} outside the domain ({expected})")]
    Domain {
        function: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("inverse digamma did not converge after {iterations} iterations (last iterate {last}, residual {residual:e})")]
    Convergence {
        iterations: usize,
        last: f64,
        residual: f64,
    },

    #[error("RIG kernel undefined at x = {x} with bandwidth b = {b} (requires x > b)")]
    BoundaryDegeneracy { x: f64, b: f64 },

    #[error("observation {index} is invalid ({value}); observations must be finite and strictly positive")]
    InvalidObservation { index: usize, value: f64 },

    #[error("sample needs at least 2 observations, got {0}")]
    SampleTooSmall(usize),

    #[error("degenerate sample: spread estimate is zero")]
    DegenerateSample,

    #[error("bandwidth must be positive and finite, got {0}")]
    InvalidBandwidth(f64),

    #[error("invalid evaluation grid: {0}")]
    InvalidGrid(String),

    #[error("optimisation failed: {0}")]
    Optimization(String),

    #[error("quadrature did not reach tolerance {requested:e} (achieved {achieved:e})")]
    Integration { requested: f64, achieved: f64 },

    #[error("evaluation grid does not cover the {quantile} quantile at {location}")]
    Coverage { quantile: f64, location: f64 },

    #[error("invalid density parameters: {0}")]
    InvalidDensity(String),

    #[error("invalid experiment configuration: {0}")]
    InvalidConfig(String),

    #[error("replication {replication}, kernel {kernel}: {source}")]
    Replication {
        replication: usize,
        kernel: KernelId,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Strips replication tagging to expose the underlying failure.
    pub fn root(&self) -> &Error {
        match self {
            Error::Replication { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
