//! `subent`: command-line front end for the subent library.
//!
//! Exit codes: 0 ok (including a failing verification verdict), 1 generic
//! error, 2 parse error, 3 maximally-entangled dimension bound, 4 Hamming
//! bound, 5 subspace not totally entangled enough.

mod commands;
mod files;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

pub use files::SubspaceFile;
pub use report::Report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error(transparent)]
    Lib(#[from] subent::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Io(_) => 1,
            CliError::Lib(e) => match e {
                subent::Error::MaxEntDimensionBound { .. } => 3,
                subent::Error::HammingViolated { .. } => 4,
                subent::Error::NotTotallyEntangled { .. } => 5,
                _ => 1,
            },
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "subent", version, about = "Entanglement of subspaces and qubit codes")]
pub struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimize the entanglement entropy over a subspace.
    EosMin {
        #[arg(long)]
        subspace: PathBuf,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long)]
        seed: u64,
        /// Gradient-norm tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 2000)]
        max_iters: usize,
    },
    /// Construct or verify maximally entangled subspaces.
    #[command(subcommand)]
    Maxent(MaxentCommand),
    /// Code bounds, totally entangled subspaces and orthogonal codes.
    #[command(subcommand)]
    Code(CodeCommand),
    /// Shor's nine-qubit code.
    #[command(subcommand)]
    Shor(ShorCommand),
    /// Haar-random states and subspaces.
    #[command(subcommand)]
    Random(RandomCommand),
    /// Write a built-in subspace to a file.
    Fixture {
        #[arg(value_enum)]
        name: commands::FixtureName,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum MaxentCommand {
    /// Build a maximally entangled subspace of C^dA ⊗ C^dB.
    Construct {
        #[arg(long = "da", alias = "dA")]
        da: usize,
        #[arg(long = "db", alias = "dB")]
        db: usize,
        #[arg(long)]
        dim: usize,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Check the Gram and isometry criteria on a subspace file.
    Verify {
        #[arg(long)]
        subspace: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum CodeCommand {
    /// Quantum Hamming and Singleton bounds for n qubits, l logical, k errors.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        k: usize,
    },
    /// Check maximal entanglement across every k-qubit cut.
    TotallyEntangled {
        #[arg(long)]
        subspace: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Build an orthogonal code from a code space and verify it on all errors.
    BuildVerify {
        #[arg(long)]
        subspace: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum ShorCommand {
    /// Entanglement of the code space across all 36 two-qubit cuts.
    Survey {
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Apply one Pauli error to a random codeword and correct it.
    Demo {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        pauli: u8,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..9))]
        qubit: u8,
        #[arg(long)]
        seed: u64,
    },
    /// Residuals of the containment relation for every qubit and Pauli.
    Containment,
}

#[derive(Debug, Subcommand)]
pub enum RandomCommand {
    /// Mean entanglement entropy of Haar-random states.
    AvgEnt {
        #[arg(long = "da", alias = "dA")]
        da: usize,
        #[arg(long = "db", alias = "dB")]
        db: usize,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Write a Haar-random subspace to a file.
    Subspace {
        /// Total dimension; split as (√dim, √dim) when square, else (dim, 1),
        /// unless --da/--db are given.
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        d: usize,
        #[arg(long = "da", alias = "dA")]
        da: Option<usize>,
        #[arg(long = "db", alias = "dB")]
        db: Option<usize>,
        #[arg(long)]
        seed: u64,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(t) = cli.threads {
        subent::configure_threads(t)?;
    }
    let report = commands::execute(cli.command)?;
    let text = report.to_json();
    match cli.out {
        Some(path) => std::fs::write(&path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("subent: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
