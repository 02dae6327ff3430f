//! `hyperpurify`: command-line front end for the purification simulator.
//!
//! Exit status is 0 on success, 2 for invalid arguments, 3 when a run
//! detects a broken numerical invariant and 1 for I/O failures.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use output::{emit, Format, Output};

#[derive(Debug, Parser)]
#[command(name = "hyperpurify", version, about = "Simulate one-step entanglement purification with hyperentangled photon pairs")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "pretty")]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for sampled tomography (default 0).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Before/after fidelities for the six noise presets, with reference values.
    Table1(commands::Table1Args),
    /// Purify one noisy input and report every accepted pattern.
    Purify(commands::PurifyArgs),
    /// Polarization density matrix before or after purification.
    Densmat(commands::DensmatArgs),
    /// LC timing schedules and the Pauli channels they load.
    Schedule(commands::ScheduleArgs),
    /// Iterated two-copy recurrence purification on isotropic input.
    Bbpssw(commands::BbpsswArgs),
    /// Source-rate advantage of one-pair over multi-pair purification.
    Efficiency(commands::EfficiencyArgs),
    /// One-step purification next to recurrence purification.
    Compare(commands::CompareArgs),
    /// Simulated two-qubit tomography of a pipeline state.
    Tomo(commands::TomoArgs),
}

#[derive(Debug)]
pub enum CliError {
    Core(hyperpurify::Error),
    Usage(String),
    Invariant(String),
    Io(std::io::Error),
}

impl From<hyperpurify::Error> for CliError {
    fn from(e: hyperpurify::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_invariant_violation() => 3,
            CliError::Invariant(_) => 3,
            CliError::Core(_) | CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Invariant(m) => write!(f, "invariant violated: {m}"),
            CliError::Io(e) => write!(f, "I/O error: {e}"),
        }
    }
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let seed = cli.seed.unwrap_or(0);
    match &cli.command {
        Command::Table1(a) => commands::table1(a, seed),
        Command::Purify(a) => commands::purify(a),
        Command::Densmat(a) => commands::densmat(a),
        Command::Schedule(a) => commands::schedule(a),
        Command::Bbpssw(a) => commands::bbpssw(a),
        Command::Efficiency(a) => commands::efficiency(a),
        Command::Compare(a) => commands::compare_cmd(a),
        Command::Tomo(a) => commands::tomo(a, seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let result = run(&cli).and_then(|out| {
        let text = out.render(cli.format)?;
        emit(&text, cli.output.as_deref())?;
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
