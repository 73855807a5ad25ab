//! Kernel density estimation on an evaluation grid.

mod asymptotic;
mod bandwidth;

pub use asymptotic::{
    asymptotic_bias, asymptotic_variance, exact_estimator_moments, AsymptoticRegime,
    EstimatorMoments,
};
pub use bandwidth::{
    bandwidth_to_kernel_scale, gamma_reference, ge2_amise, ge_amise, numeric_bandwidth_ge, optimal_bandwidth_ge2,
    select_bandwidth, silverman_bandwidth, silverman_scale, Bandwidth, BandwidthMethod,
    MiseCoefficients,
};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernels::{KernelId, PreparedKernel};

/// Number of points in the grid built by [`default_grid`].
pub const DEFAULT_GRID_SIZE: usize = 512;

/// A validated sample of strictly positive observations, stored in ascending order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    values: Vec<f64>,
}

impl Sample {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v > 0.0))
        {
            return Err(Error::InvalidObservation { index, value });
        }
        if values.len() < 2 {
            return Err(Error::SampleTooSmall(values.len()));
        }
        values.sort_by(f64::total_cmp);
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.len() as f64
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        let mean = self.mean();
        let ss: f64 = self.values.iter().map(|v| (v - mean) * (v - mean)).sum();
        ss / (self.len() - 1) as f64
    }

    pub fn std_dev(&self) -> f64 {
        self.variance().sqrt()
    }

    /// Linear-interpolation quantile (the "type 7" definition).
    pub fn quantile(&self, p: f64) -> f64 {
        let h = (self.len() - 1) as f64 * p.clamp(0.0, 1.0);
        let lo = h.floor() as usize;
        let hi = (lo + 1).min(self.len() - 1);
        let frac = h - lo as f64;
        self.values[lo] + frac * (self.values[hi] - self.values[lo])
    }

    pub fn iqr(&self) -> f64 {
        self.quantile(0.75) - self.quantile(0.25)
    }
}

/// Estimated density values on a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityEstimate {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub kernel: KernelId,
    pub bandwidth: Bandwidth,
    pub n: usize,
}

/// `count` equally spaced points on `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (count - 1) as f64;
            (0..count)
                .map(|i| if i + 1 == count { hi } else { lo + step * i as f64 })
                .collect()
        }
    }
}

/// 512 points from `max(min/2, 1e-6 max)` to `1.1 max`.
pub fn default_grid(sample: &Sample) -> Vec<f64> {
    let lo = (0.5 * sample.min()).max(1e-6 * sample.max());
    linspace(lo, 1.1 * sample.max(), DEFAULT_GRID_SIZE)
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid("grid is empty".into()));
    }
    if let Some(p) = grid.iter().find(|p| !(p.is_finite() && **p >= 0.0)) {
        return Err(Error::InvalidGrid(format!(
            "grid point {p} is not a finite nonnegative number"
        )));
    }
    if let Some(w) = grid.windows(2).find(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid(format!(
            "grid must be strictly increasing ({} followed by {})",
            w[0], w[1]
        )));
    }
    Ok(())
}

/// Evaluates the kernel density estimate of `sample` at every grid point.
///
/// Grid points are evaluated in parallel; each point sums over the (sorted)
/// data in a fixed order, so the result is bit-identical to a sequential run.
pub fn estimate_density(
    sample: &Sample,
    kernel: KernelId,
    bandwidth: Bandwidth,
    grid: &[f64],
) -> Result<DensityEstimate> {
    check_grid(grid)?;
    let b = bandwidth.b;
    let n = sample.len() as f64;
    let values = grid
        .par_iter()
        .map(|&x| {
            let prepared = PreparedKernel::new(kernel, x, b)?;
            let sum: f64 = sample.values().iter().map(|&z| prepared.density(z)).sum();
            Ok(sum / n)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(DensityEstimate {
        grid: grid.to_vec(),
        values,
        kernel,
        bandwidth,
        n: sample.len(),
    })
}

/// Trapezoid rule of `values` over `grid`.
pub fn trapezoid(grid: &[f64], values: &[f64]) -> f64 {
    grid.windows(2)
        .zip(values.windows(2))
        .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
        .sum()
}
