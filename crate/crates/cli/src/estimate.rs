use std::path::PathBuf;

use clap::{Args, ValueEnum};
use gekde::estimator::{
    default_grid, gamma_reference, ge2_amise, ge_amise, linspace, select_bandwidth,
};
use gekde::{estimate_density, Bandwidth, BandwidthMethod, KernelId, Sample};
use serde::Serialize;

use crate::error::{CliError, CliResult, EXIT_DOMAIN};
use crate::input::read_column;
use crate::output::{ensure_dir, fmt_f64, to_json, write_atomic};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Silverman,
    OptimalGe2,
    NumericGe,
}

impl From<Method> for BandwidthMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Silverman => BandwidthMethod::Silverman,
            Method::OptimalGe2 => BandwidthMethod::OptimalGe2,
            Method::NumericGe => BandwidthMethod::NumericGe,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl std::str::FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, count] = parts.as_slice() else {
            return Err(format!("grid {s:?} is not of the form min:max:count"));
        };
        let min: f64 = min.parse().map_err(|_| format!("bad grid minimum {min:?}"))?;
        let max: f64 = max.parse().map_err(|_| format!("bad grid maximum {max:?}"))?;
        let count: usize = count.parse().map_err(|_| format!("bad grid count {count:?}"))?;
        if !(min.is_finite() && max.is_finite() && min >= 0.0) {
            return Err("grid bounds must be finite and nonnegative".into());
        }
        match count {
            0 => Err("grid count must be at least 1".into()),
            1 if min != max => Err("a single-point grid needs min == max".into()),
            1 => Ok(Self { min, max, count }),
            _ if max <= min => Err("grid maximum must exceed the minimum".into()),
            _ => Ok(Self { min, max, count }),
        }
    }
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    /// CSV file of positive observations.
    #[arg(long)]
    pub input: PathBuf,
    /// Header name of the column to read (default: first column).
    #[arg(long)]
    pub column: Option<String>,
    /// Kernel to apply; repeat for several.
    #[arg(long = "kernel", value_parser = parse_kernel)]
    pub kernels: Vec<KernelId>,
    /// Fixed bandwidth on the kernel's own scale, used for every kernel.
    #[arg(long, conflicts_with = "bandwidth_method")]
    pub bandwidth: Option<f64>,
    #[arg(long, value_enum, default_value = "silverman")]
    pub bandwidth_method: Method,
    /// Evaluation grid as min:max:count.
    #[arg(long)]
    pub grid: Option<GridSpec>,
    /// Directory for the output files.
    #[arg(long, default_value = ".")]
    pub output: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

pub fn parse_kernel(s: &str) -> Result<KernelId, String> {
    s.parse::<KernelId>().map_err(|e| e.to_string())
}

#[derive(Debug, Serialize)]
struct ReferenceAmise {
    label: &'static str,
    value: f64,
}

#[derive(Debug, Serialize)]
struct KernelSummary {
    kernel: KernelId,
    bandwidth: f64,
    method: BandwidthMethod,
    n: usize,
    grid_points: usize,
    grid_clipped: bool,
    reference_amise: Option<ReferenceAmise>,
}

#[derive(Debug, Serialize)]
struct DensityJson<'a> {
    kernel: KernelId,
    x: &'a [f64],
    fhat: &'a [f64],
}

// Approximate MISE under a moment-matched gamma reference; only the GE family has one.
fn reference_amise(sample: &Sample, kernel: KernelId, b: f64) -> Option<ReferenceAmise> {
    let reference = gamma_reference(sample).ok()?;
    let n = sample.len();
    let value = match kernel {
        KernelId::Ge => ge_amise(b, reference.ge_mise_coefficients().ok()?, n),
        KernelId::Ge2 => ge2_amise(b, reference.roughness().ok()?, n),
        _ => return None,
    };
    Some(ReferenceAmise {
        label: "approximate MISE under a moment-matched gamma reference density",
        value,
    })
}

pub fn run(args: &EstimateArgs) -> CliResult<()> {
    let values = read_column(&args.input, args.column.as_deref())?;
    let sample = Sample::new(values)?;
    let kernels = if args.kernels.is_empty() {
        KernelId::DEFAULT_SET.to_vec()
    } else {
        args.kernels.clone()
    };

    let mut jobs = Vec::with_capacity(kernels.len());
    for &kernel in &kernels {
        let bandwidth = match args.bandwidth {
            Some(b) => Bandwidth::fixed(b)?,
            None => select_bandwidth(&sample, kernel, args.bandwidth_method.into())?,
        };
        let (grid, clipped) = match args.grid {
            Some(g) => (linspace(g.min, g.max, g.count), false),
            None if kernel == KernelId::Rig => {
                let full = default_grid(&sample);
                let kept: Vec<f64> = full.iter().copied().filter(|&x| x > bandwidth.b).collect();
                if kept.is_empty() {
                    return Err(CliError {
                        code: EXIT_DOMAIN,
                        message: format!(
                            "RIG bandwidth {} exceeds every point of the default grid",
                            bandwidth.b
                        ),
                    });
                }
                let clipped = kept.len() < full.len();
                (kept, clipped)
            }
            None => (default_grid(&sample), false),
        };
        let est = estimate_density(&sample, kernel, bandwidth, &grid)?;
        jobs.push((est, clipped));
    }

    ensure_dir(&args.output)?;
    let mut summaries = Vec::with_capacity(jobs.len());
    for (est, clipped) in &jobs {
        let kernel = est.kernel;
        match args.format {
            Format::Csv => {
                let mut out = String::from("x,fhat\n");
                for (x, f) in est.grid.iter().zip(&est.values) {
                    out.push_str(&fmt_f64(*x));
                    out.push(',');
                    out.push_str(&fmt_f64(*f));
                    out.push('\n');
                }
                write_atomic(&args.output, &format!("{kernel}.csv"), &out)?;
            }
            Format::Json => {
                let body = DensityJson {
                    kernel,
                    x: &est.grid,
                    fhat: &est.values,
                };
                write_atomic(&args.output, &format!("{kernel}.json"), &to_json(&body))?;
            }
        }
        summaries.push(KernelSummary {
            kernel,
            bandwidth: est.bandwidth.b,
            method: est.bandwidth.method,
            n: est.n,
            grid_points: est.grid.len(),
            grid_clipped: *clipped,
            reference_amise: reference_amise(&sample, kernel, est.bandwidth.b),
        });
    }
    write_atomic(&args.output, "summary.json", &to_json(&summaries))?;
    Ok(())
}
