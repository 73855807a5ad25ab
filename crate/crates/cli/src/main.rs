//! `gekde`: density estimation, simulation campaigns and asymptotic diagnostics.

mod diagnose;
mod error;
mod estimate;
mod input;
mod output;
mod simulate;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "gekde", version, about = "Kernel density estimation for positive data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Estimate densities from a CSV column.
    Estimate(estimate::EstimateArgs),
    /// Run the Monte Carlo MISE benchmark.
    Simulate(simulate::SimulateArgs),
    /// Compare exact and leading-order bias and variance of GE/GE2.
    Diagnose(diagnose::DiagnoseArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Estimate(args) => estimate::run(args),
        Command::Simulate(args) => simulate::run(args),
        Command::Diagnose(args) => diagnose::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
