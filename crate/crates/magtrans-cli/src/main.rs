//! Command line front end for the magnetic translation phase engine.
//!
//! Exit codes: `0` when every record in the report passes, `1` when at
//! least one identity check fails, `2` for input or usage errors (bad
//! config, malformed data files, unsupported format/subcommand pairing).

mod checks;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use report::Format;

#[derive(Parser)]
#[command(
    name = "magtrans",
    version,
    about = "Exact-arithmetic checks for magnetic translation phase cocycles",
    propagate_version = true
)]
struct Cli {
    /// Path to a JSON run configuration; defaults are used when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Seed for the deterministic sample generator (overrides config).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Number of random samples per sampled check (overrides config).
    #[arg(long, global = true)]
    samples: Option<usize>,

    /// Output format: json, table, or csv (csv only for `loops`).
    #[arg(long, global = true, default_value = "table")]
    format: String,

    /// Tolerance for floating-point checks only (overrides config).
    #[arg(long, global = true)]
    tolerance: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare the closed-form cocycle with exact simplex integration.
    C3,
    /// Verify the pentagon identity symbolically and on random samples.
    Pentagon,
    /// Verify the triangle face-phase product against the cocycle.
    Faces,
    /// Verify the based quadratic cochain cobounds the cocycle.
    Groupoid,
    /// Solve for the determinant-cochain coefficient (dimension 3).
    Rsolve,
    /// Check flux integrality and the integer-lattice obstruction.
    Torus,
    /// Tabulate loop-space cocycle, holonomy, and SU(2) float checks.
    Loops,
    /// Check truncated Fock implementers: cocycle, associator, equivalence.
    Fock,
    /// Extract one product cocycle from a structured JSON input file.
    FockCocycle {
        /// JSON file with fields n, cutoff (alias m), guard, omega, p, q.
        file: PathBuf,
    },
    /// Run every subcommand in order and merge the records.
    All,
}

fn build_report(cli: &Cli) -> Result<report::Report> {
    if let Command::FockCocycle { file } = &cli.command {
        let input = config::load_fock_cocycle_input(file)?;
        return checks::run_fock_cocycle(&input);
    }
    let mut resolved = config::resolve(cli.config.as_deref())?;
    if let Some(seed) = cli.seed {
        resolved.config.seed = seed;
    }
    if let Some(samples) = cli.samples {
        resolved.config.samples = samples;
    }
    if let Some(tol) = cli.tolerance {
        resolved.config.tolerance = tol;
    }
    match cli.command {
        Command::C3 => checks::run_c3(&resolved),
        Command::Pentagon => checks::run_pentagon(&resolved),
        Command::Faces => checks::run_faces(&resolved),
        Command::Groupoid => checks::run_groupoid(&resolved),
        Command::Rsolve => checks::run_rsolve(&resolved),
        Command::Torus => checks::run_torus(&resolved),
        Command::Loops => checks::run_loops(&resolved),
        Command::Fock => checks::run_fock(&resolved),
        Command::All => checks::run_all(&resolved),
        Command::FockCocycle { .. } => unreachable!("handled above"),
    }
}

fn run() -> Result<(report::Report, String)> {
    let cli = Cli::parse();
    let format: Format = cli.format.parse()?;
    let rep = build_report(&cli)?;
    let rendered = report::render(&rep, format)?;
    Ok((rep, rendered))
}

fn main() -> ExitCode {
    match run() {
        Ok((rep, rendered)) => {
            print!("{rendered}");
            if rep.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
