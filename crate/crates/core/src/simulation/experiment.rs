use rayon::prelude::*;
use serde::Serialize;

use super::density::{Configuration, TrueDensity};
use super::report::MiseReport;
use super::rng::replication_rngs;
use crate::error::{Error, Result};
use crate::estimator::{
    bandwidth_to_kernel_scale, estimate_density, linspace, optimal_bandwidth_ge2,
    silverman_bandwidth, trapezoid, Bandwidth, BandwidthMethod, DensityEstimate,
};
use crate::kernels::KernelId;

/// Lower and upper probabilities bounding the ISE integration range.
pub const ISE_LOWER_PROBABILITY: f64 = 0.0005;
pub const ISE_UPPER_PROBABILITY: f64 = 0.9995;

/// Integration range `[q(0.0005), q(0.9995)]` of a true density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IseDomain {
    pub lo: f64,
    pub hi: f64,
}

impl IseDomain {
    pub fn for_density(d: &TrueDensity) -> Result<Self> {
        Ok(Self {
            lo: d.quantile(ISE_LOWER_PROBABILITY)?,
            hi: d.quantile(ISE_UPPER_PROBABILITY)?,
        })
    }

    pub fn grid(&self, count: usize) -> Vec<f64> {
        linspace(self.lo, self.hi, count)
    }
}

/// ISE of `est` against `d`, after checking the grid spans the central 99.9% of `d`.
pub fn integrated_squared_error(est: &DensityEstimate, d: &TrueDensity) -> Result<f64> {
    let domain = IseDomain::for_density(d)?;
    integrated_squared_error_within(est, d, &domain)
}

/// As [`integrated_squared_error`] with a precomputed domain.
pub fn integrated_squared_error_within(
    est: &DensityEstimate,
    d: &TrueDensity,
    domain: &IseDomain,
) -> Result<f64> {
    let slack = 1e-12 * domain.hi;
    match (est.grid.first(), est.grid.last()) {
        (Some(&first), Some(&last)) => {
            if first > domain.lo + slack {
                return Err(Error::Coverage {
                    quantile: ISE_LOWER_PROBABILITY,
                    location: domain.lo,
                });
            }
            if last < domain.hi - slack {
                return Err(Error::Coverage {
                    quantile: ISE_UPPER_PROBABILITY,
                    location: domain.hi,
                });
            }
        }
        _ => return Err(Error::InvalidGrid("estimate has an empty grid".into())),
    }
    let truth: Vec<f64> = est.grid.iter().map(|&x| d.pdf(x)).collect();
    Ok(squared_error(&est.grid, &est.values, &truth))
}

fn squared_error(grid: &[f64], values: &[f64], truth: &[f64]) -> f64 {
    let sq: Vec<f64> = values
        .iter()
        .zip(truth)
        .map(|(v, f)| (v - f) * (v - f))
        .collect();
    trapezoid(grid, &sq)
}

/// How each replication picks its bandwidth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BandwidthRule {
    /// Silverman rule of thumb on each sample.
    Silverman,
    /// GE-scale `b*` from the true density's exact roughness.
    OptimalGe2,
    /// The same bandwidth for every kernel and replication.
    Fixed(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub config_id: Configuration,
    /// True density; defaults to the catalogue entry for `config_id`.
    pub density: TrueDensity,
    pub kernels: Vec<KernelId>,
    pub n: usize,
    pub replications: usize,
    pub seed: u64,
    pub grid_size: usize,
    pub bandwidth: BandwidthRule,
}

impl ExperimentConfig {
    pub fn new(config_id: Configuration, n: usize, replications: usize, seed: u64) -> Self {
        Self {
            config_id,
            density: config_id.density(),
            kernels: KernelId::DEFAULT_SET.to_vec(),
            n,
            replications,
            seed,
            grid_size: 512,
            bandwidth: BandwidthRule::Silverman,
        }
    }

    pub fn with_kernels(mut self, kernels: &[KernelId]) -> Self {
        self.kernels = kernels.to_vec();
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(Error::InvalidConfig("replications must be at least 1".into()));
        }
        if self.n < 2 {
            return Err(Error::InvalidConfig("sample size must be at least 2".into()));
        }
        if self.grid_size < 64 {
            return Err(Error::InvalidConfig("grid_size must be at least 64".into()));
        }
        if self.kernels.is_empty() {
            return Err(Error::InvalidConfig("no kernels requested".into()));
        }
        if let BandwidthRule::Fixed(b) = self.bandwidth {
            Bandwidth::fixed(b)?;
        }
        Ok(())
    }
}

struct Cell {
    ise: f64,
    truncated: bool,
}

/// Runs every replication and returns one report per requested kernel.
///
/// Replication `r` draws from its own pair of RNG streams, so the output does
/// not depend on how replications are scheduled across threads.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<MiseReport>> {
    cfg.validate()?;
    let domain = IseDomain::for_density(&cfg.density)?;
    let grid = domain.grid(cfg.grid_size);
    let truth: Vec<f64> = grid.iter().map(|&x| cfg.density.pdf(x)).collect();
    let optimal = match cfg.bandwidth {
        BandwidthRule::OptimalGe2 => {
            Some(optimal_bandwidth_ge2(cfg.density.roughness()?, cfg.n)?.b)
        }
        _ => None,
    };

    let rows = (0..cfg.replications)
        .into_par_iter()
        .map(|r| {
            let (mut labels, mut draws) = replication_rngs(cfg.seed, r);
            let sample = cfg.density.sample_with(cfg.n, &mut labels, &mut draws)?;
            cfg.kernels
                .iter()
                .map(|&kernel| {
                    replicate(cfg, kernel, &sample, &grid, &truth, optimal).map_err(|e| {
                        Error::Replication {
                            replication: r,
                            kernel,
                            source: Box::new(e),
                        }
                    })
                })
                .collect::<Result<Vec<Cell>>>()
        })
        .collect::<Result<Vec<Vec<Cell>>>>()?;

    Ok(cfg
        .kernels
        .iter()
        .enumerate()
        .map(|(k, &kernel)| {
            let ise: Vec<f64> = rows.iter().map(|row| row[k].ise).collect();
            let truncated = rows.iter().filter(|row| row[k].truncated).count();
            MiseReport::new(cfg.config_id, kernel, cfg.n, ise, truncated)
        })
        .collect())
}

fn replicate(
    cfg: &ExperimentConfig,
    kernel: KernelId,
    sample: &crate::estimator::Sample,
    grid: &[f64],
    truth: &[f64],
    optimal: Option<f64>,
) -> Result<Cell> {
    let bandwidth = match cfg.bandwidth {
        BandwidthRule::Silverman => silverman_bandwidth(sample, kernel)?,
        BandwidthRule::OptimalGe2 => Bandwidth::new(
            bandwidth_to_kernel_scale(optimal.expect("computed above"), kernel),
            BandwidthMethod::OptimalGe2,
        )?,
        BandwidthRule::Fixed(b) => Bandwidth::fixed(b)?,
    };
    // RIG is undefined at x <= b: integrate only where it exists
    let start = if kernel == KernelId::Rig {
        grid.partition_point(|&x| x <= bandwidth.b)
    } else {
        0
    };
    let truncated = start > 0;
    if grid.len() - start < 2 {
        return Ok(Cell {
            ise: f64::NAN,
            truncated,
        });
    }
    let est = estimate_density(sample, kernel, bandwidth, &grid[start..])?;
    Ok(Cell {
        ise: squared_error(&est.grid, &est.values, &truth[start..]),
        truncated,
    })
}
