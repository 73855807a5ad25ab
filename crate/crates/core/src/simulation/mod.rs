//! True densities, seeded sampling and the Monte Carlo MISE harness.

mod density;
mod experiment;
mod report;
mod rng;

pub use density::{inverse_weibull_from_uniform, Configuration, Family, TrueDensity};
pub use experiment::{
    integrated_squared_error, integrated_squared_error_within, run_experiment, BandwidthRule,
    ExperimentConfig, IseDomain,
};
pub use report::{format_table, reports_to_csv, summary_json, CellSummary, MiseReport};
pub use rng::{replication_rngs, stream_rng};
