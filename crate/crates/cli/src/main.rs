//! `bottomless`: construct parity-paired degenerate bound states in
//! bottomless 1D potentials and verify every analytic claim numerically.
//!
//! Exit codes: 0 success, 1 verification-check failure, 2 configuration
//! error, 3 numerical-convergence error.

mod args;
mod commands;
mod config;
mod errors;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::errors::CliError;

pub use crate::args::parse_real;

#[derive(Parser)]
#[command(
    name = "bottomless",
    version,
    about = "Degenerate parity pairs in bottomless 1D potentials: construction, verification, well landscape, and an independent Numerov spectrum"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a degenerate pair: x, V, psi_plus, psi_minus, energy.
    Construct(commands::ConstructArgs),
    /// Run the invariant battery and emit a pass/fail report.
    Verify(commands::VerifyArgs),
    /// Classify the Lorentzian well/barrier landscape at one gamma.
    Wellscape(commands::WellscapeArgs),
    /// Locate box eigenvalues with the Numerov shooting solver.
    Spectrum(commands::SpectrumArgs),
    /// Emit the gamma = 0 Lorentzian volcano curve.
    Figure2(commands::Figure2Args),
    /// Classify the well landscape across a gamma² grid.
    Sweep(commands::SweepArgs),
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Construct(args) => commands::cmd_construct(args),
        Command::Verify(args) => commands::cmd_verify(args),
        Command::Wellscape(args) => commands::cmd_wellscape(args),
        Command::Spectrum(args) => commands::cmd_spectrum(args),
        Command::Figure2(args) => commands::cmd_figure2(args),
        Command::Sweep(args) => commands::cmd_sweep(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(err.exit_code())
        }
    }
}
