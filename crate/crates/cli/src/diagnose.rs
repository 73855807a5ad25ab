use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use gekde::estimator::{
    asymptotic_bias, asymptotic_variance, exact_estimator_moments, AsymptoticRegime,
};
use gekde::{Configuration, KernelId, TrueDensity};

use crate::error::{CliError, CliResult};
use crate::estimate::parse_kernel;
use crate::output::{ensure_dir, fmt_f64, write_atomic};

/// Smallest x / b accepted as interior.
pub const INTERIOR_RATIO: f64 = 20.0;

#[derive(Debug, Args)]
pub struct DiagnoseArgs {
    /// ge or ge2.
    #[arg(long, value_parser = parse_kernel)]
    pub kernel: KernelId,
    /// True density, e.g. gamma:3,1 (shape, scale).
    #[arg(long, required_unless_present = "config", conflicts_with = "config")]
    pub density: Option<String>,
    /// Use the true density of a benchmark configuration instead.
    #[arg(long)]
    pub config: Option<Configuration>,
    /// Evaluation point (interior mode).
    #[arg(long, required_unless_present = "boundary", conflicts_with = "boundary")]
    pub x: Option<f64>,
    /// Bandwidths, comma separated or repeated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub b: Vec<f64>,
    /// Boundary mode: evaluate at x = c b for each b.
    #[arg(long)]
    pub boundary: Option<f64>,
    /// Sample size used in the variance columns.
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Also write diagnose.csv into this directory.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub const HEADER: &str = "b,x,fx,exact_mean,exact_bias,theoretical_bias,bias_over_b,bias_over_b2,scaled_variance,theoretical_scaled_variance";

pub fn run(args: &DiagnoseArgs) -> CliResult<()> {
    if !args.kernel.is_ge_family() {
        return Err(CliError::input(format!(
            "diagnose supports ge and ge2, not {}",
            args.kernel
        )));
    }
    if args.n == 0 {
        return Err(CliError::input("--n must be at least 1"));
    }
    let density: TrueDensity = match (&args.density, args.config) {
        (Some(spec), _) => spec.parse()?,
        (None, Some(c)) => c.density(),
        (None, None) => return Err(CliError::input("one of --density or --config is required")),
    };
    if let Some(bad) = args.b.iter().find(|b| !(**b > 0.0 && b.is_finite())) {
        return Err(CliError::input(format!("bandwidth {bad} must be positive and finite")));
    }
    let b_min = args.b.iter().copied().fold(f64::INFINITY, f64::min);

    let regime = match (args.boundary, args.x) {
        (Some(c), _) => {
            if args.kernel == KernelId::Ge2 {
                return Err(CliError::input("boundary mode is only available for ge"));
            }
            AsymptoticRegime::boundary(c)?
        }
        (None, Some(x)) => {
            if !(x / b_min >= INTERIOR_RATIO) {
                return Err(CliError::input(format!(
                    "x / min(b) = {} is below {INTERIOR_RATIO}; use --boundary for points near zero",
                    x / b_min
                )));
            }
            AsymptoticRegime::Interior
        }
        (None, None) => return Err(CliError::input("one of --x or --boundary is required")),
    };

    let mut out = format!("{HEADER}\n");
    for &b in &args.b {
        let (x, slope_at) = match (regime, args.x) {
            (AsymptoticRegime::Boundary { c }, _) => (c * b, 0.0),
            (_, Some(x)) => (x, x),
            _ => unreachable!("regime chosen above"),
        };
        let [_, f1, f2] = density.derivatives(slope_at);
        let fx = density.pdf(x);
        let m = exact_estimator_moments(args.kernel, x, b, &density, args.n)?;
        let bias = m.mean - fx;
        let theory = asymptotic_bias(args.kernel, regime, b, f1, f2)?;
        let scale = 4.0 * args.n as f64 * b;
        let theory_var = asymptotic_variance(regime, b, args.n, fx)?;
        let row = [
            b,
            x,
            fx,
            m.mean,
            bias,
            theory,
            bias / b,
            bias / (b * b),
            scale * m.variance,
            scale * theory_var,
        ];
        let cells: Vec<String> = row.iter().map(|v| fmt_f64(*v)).collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }

    if let Some(dir) = &args.output {
        ensure_dir(dir)?;
        write_atomic(dir, "diagnose.csv", &out)?;
    }
    print!("{out}");
    Ok(())
}
