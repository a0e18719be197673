use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ea_lab::montecarlo::threads_from_env;

use ea_lab_cli::commands::{self, check::CheckCommand, export::ExportArgs, figures::FigureArgs};
use ea_lab_cli::commands::{run::RunArgs, sweep::SweepArgs};
use ea_lab_cli::failure::{exit_code, EXIT_USAGE};
use ea_lab_cli::opts;

#[derive(Parser, Debug)]
#[command(name = "ea-lab", version, about, args_override_self = true)]
struct Cli {
    /// Flat `key = value` file of flag defaults; explicit flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// One EFHT estimate or exact value.
    Run(RunArgs),
    /// Estimates over a grid of sizes and crossover probabilities or strategies.
    Sweep(SweepArgs),
    /// CSV and SVG data for the comparison figures.
    Figures(FigureArgs),
    /// Verification suites; exit status 1 when any check fails.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Writes the transition matrix as `i j p` triplets.
    ExportChain(ExportArgs),
}

fn main() -> ExitCode {
    let args = match opts::expand_config(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let cli = Cli::parse_from(args);
    if let Some(t) = threads_from_env() {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
    let result = match &cli.command {
        Command::Run(a) => commands::run::run(a),
        Command::Sweep(a) => commands::sweep::run(a),
        Command::Figures(a) => commands::figures::run(a),
        Command::Check(c) => commands::check::run(c),
        Command::ExportChain(a) => commands::export::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
