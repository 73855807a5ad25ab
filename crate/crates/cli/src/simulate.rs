use std::path::PathBuf;

use clap::Args;
use gekde::simulation::{
    format_table, reports_to_csv, run_experiment, summary_json, ExperimentConfig,
};
use gekde::{Configuration, KernelId};

use crate::error::{CliError, CliResult};
use crate::estimate::parse_kernel;
use crate::output::{ensure_dir, write_atomic};

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Configuration A-F; repeat for several (default: all six).
    #[arg(long = "config")]
    pub configs: Vec<Configuration>,
    /// Sample size; repeat for several.
    #[arg(long = "n", default_values_t = [100usize])]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 200)]
    pub reps: usize,
    #[arg(long = "kernel", value_parser = parse_kernel)]
    pub kernels: Vec<KernelId>,
    #[arg(long, default_value_t = 20240601)]
    pub seed: u64,
    /// Directory for mise.csv and summary.json; the table is printed regardless.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Worker threads (default: one per core).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Points in the ISE integration grid.
    #[arg(long, default_value_t = 512)]
    pub grid_size: usize,
}

pub fn run(args: &SimulateArgs) -> CliResult<()> {
    if let Some(t) = args.threads {
        if t == 0 {
            return Err(CliError::input("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::io("starting thread pool", e))?;
    }
    let configs = if args.configs.is_empty() {
        Configuration::ALL.to_vec()
    } else {
        args.configs.clone()
    };
    let kernels = if args.kernels.is_empty() {
        KernelId::DEFAULT_SET.to_vec()
    } else {
        args.kernels.clone()
    };

    let mut reports = Vec::new();
    for &config in &configs {
        for &n in &args.sizes {
            let mut cfg = ExperimentConfig::new(config, n, args.reps, args.seed).with_kernels(&kernels);
            cfg.grid_size = args.grid_size;
            reports.extend(run_experiment(&cfg)?);
        }
    }

    if let Some(dir) = &args.output {
        ensure_dir(dir)?;
        write_atomic(dir, "mise.csv", &reports_to_csv(&reports))?;
        let mut summary = summary_json(&reports);
        summary.push('\n');
        write_atomic(dir, "summary.json", &summary)?;
    }
    print!("{}", format_table(&reports));
    Ok(())
}
