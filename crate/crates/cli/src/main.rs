//! `hypermermin`: reproducible reports on hypergraph-state non-locality,
//! hyperdeterminants, section singularities and measurement circuits.

mod commands;
mod fmt;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use commands::{circuit, classify, mu, report, state};

#[derive(Parser, Debug)]
#[command(name = "hypermermin", version, about = "Mermin non-locality and singularity analysis of hypergraph states")]
struct Cli {
    /// Also write the run report (config, seeds, full-precision results, timings) here
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Catalog file (JSON lines) used by --catalog; defaults to the bundled one
    #[arg(long, global = true, value_name = "FILE", env = "HYPERMERMIN_CATALOG")]
    catalog_file: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build statevector files from edges, or recover edges from a statevector
    #[command(subcommand)]
    State(state::StateCmd),
    /// Maximize the Mermin value μ (or μ̃ with --mu-tilde)
    Mu(mu::MuArgs),
    /// Hyperdeterminant, SLOCC stratum and section singularities
    Classify(classify::ClassifyArgs),
    /// Emit, verify and run preparation/measurement circuits
    #[command(subcommand)]
    Circuit(circuit::CircuitCmd),
    /// Compare computed values with the published tables
    #[command(subcommand)]
    Report(report::ReportCmd),
}

/// What a command produced: text for the terminal plus the JSON payload.
pub struct Outcome {
    pub text: String,
    pub config: Value,
    pub results: Value,
    /// False when a requested check failed.
    pub passed: bool,
}

impl Outcome {
    pub fn ok(text: String, config: Value, results: Value) -> Self {
        Self { text, config, results, passed: true }
    }
}

#[derive(Serialize)]
struct RunReport<'a> {
    command: Vec<String>,
    config: &'a Value,
    results: &'a Value,
    passed: bool,
    timings: Timings,
}

#[derive(Serialize)]
struct Timings {
    wall_seconds: f64,
}

fn run(cli: &Cli) -> Result<Outcome> {
    let catalog = cli.catalog_file.as_deref();
    match &cli.command {
        Command::State(cmd) => state::run(cmd, catalog),
        Command::Mu(args) => mu::run(args, catalog),
        Command::Classify(args) => classify::run(args, catalog),
        Command::Circuit(cmd) => circuit::run(cmd, catalog),
        Command::Report(cmd) => report::run(cmd, catalog),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli).and_then(|outcome| {
        print!("{}", outcome.text);
        if let Some(path) = &cli.json {
            let report = RunReport {
                command: std::env::args().collect(),
                config: &outcome.config,
                results: &outcome.results,
                passed: outcome.passed,
                timings: Timings { wall_seconds: start.elapsed().as_secs_f64() },
            };
            let text = serde_json::to_string_pretty(&report)?;
            std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
        }
        Ok(outcome.passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
