//! `givental`: correlator tables, operator orders, stabilizer verification
//! and Hodge-type checks on finite-dimensional graded algebras.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use givental::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Genus0,
    Genus01,
    Crosscheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Example {
    Gauge,
    Acyclic,
}

#[derive(Parser, Debug)]
#[command(name = "givental", version, about = "Givental-action stabilizers of TFTs and BV∞ checks")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Genus-one correlator cache (JSON). GIVENTAL_CACHE takes precedence.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Nonzero ψ-class intersection numbers up to n points.
    Correlators {
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=1))]
        genus: u32,
        #[arg(long)]
        n_max: usize,
    },
    /// Minimal Koszul order of a named operator.
    Order {
        /// JSON file or catalog:NAME.
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        operator: String,
        #[arg(long, default_value_t = 6)]
        l_max: usize,
    },
    /// Stabilizer verdicts for a series D_1, D_2, … (names in order).
    Verify {
        #[arg(long)]
        algebra: String,
        #[arg(long, value_delimiter = ',', required = true)]
        series: Vec<String>,
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "crosscheck")]
        mode: Mode,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Multicomplex, BV∞, transfer and gauge checks.
    Hodge {
        #[arg(long, required_unless_present = "example")]
        algebra: Option<String>,
        /// D_1, D_2, … by name.
        #[arg(long, value_delimiter = ',')]
        series: Vec<String>,
        /// A_1, A_2, … by name.
        #[arg(long, value_delimiter = ',')]
        gauge: Vec<String>,
        /// Names of p, i, h.
        #[arg(long, value_delimiter = ',', num_args = 3)]
        retract: Vec<String>,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        /// Also compute the induced correlators on homology.
        #[arg(long)]
        induced: bool,
        /// Built-in example instead of a file.
        #[arg(long, value_enum, conflicts_with = "algebra")]
        example: Option<Example>,
    },
    /// Randomized comparison of stabilizer verdicts with operator conditions.
    Campaign {
        /// Restrict to one algebra (default: whole catalog).
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long, default_value_t = 20240611)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        random_ops: usize,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 4)]
        l_max: usize,
        #[arg(long)]
        genus1: bool,
    },
    /// Built-in algebras and operators.
    Catalog {
        /// Print one entry in the JSON algebra format.
        #[arg(long)]
        export: Option<String>,
    },
}

pub enum Failure {
    Error(Error),
    Discrepancy(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Format(_) | Error::Rational(_) | Error::DimensionMismatch { .. } | Error::UnknownOperator(_) => 3,
        Error::Inconsistency(_) => 5,
        _ => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Discrepancy(text)) => {
            print!("{text}");
            eprintln!("error: stabilizer verdicts disagree with the operator conditions");
            ExitCode::from(5)
        }
    }
}
