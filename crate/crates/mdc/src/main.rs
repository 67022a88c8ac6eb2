//! `mdc`: batch decompositions of measures described in JSON problem files.
//!
//! Exit codes: 0 success, 1 parse error, 2 semantic error, 3 oracle
//! disagreement (the report with both results is still written).

mod commands;
mod problem;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Semantic(String),
}

impl CliError {
    pub fn parse(msg: String) -> Self {
        CliError::Parse(msg)
    }

    pub fn semantic(msg: String) -> Self {
        CliError::Semantic(msg)
    }

    pub fn semantic_from(e: measure_decomp::Error) -> Self {
        CliError::Semantic(e.to_string())
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Semantic(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Semantic(m) => m,
        }
    }
}

#[derive(Parser)]
#[command(name = "mdc", about = "Decompositions of measures from JSON problem files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Problem file (JSON).
    #[arg(long)]
    input: PathBuf,
    /// Report destination; a path or `-` for stdout (the default).
    #[arg(long)]
    output: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose the target measure relative to the declared family.
    Decompose {
        #[command(flatten)]
        common: Common,
        /// Also report the support stripped of null blocks.
        #[arg(long)]
        minimal_support: bool,
    },
    /// Hahn decomposition and Jordan parts of the target measure.
    HahnJordan {
        #[command(flatten)]
        common: Common,
    },
    /// Lebesgue decomposition relative to a named reference measure.
    Lebesgue {
        #[command(flatten)]
        common: Common,
        /// Name of the reference measure.
        #[arg(long)]
        wrt: String,
    },
    /// Split a line-model measure into atoms and density (line model).
    AtomicDiffuse {
        #[command(flatten)]
        common: Common,
    },
    /// Topological support of a positive line-model measure.
    Support {
        #[command(flatten)]
        common: Common,
    },
    /// Decompose a vector measure via its control measure.
    Vector {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        minimal_support: bool,
    },
    /// Decompose a spectral measure via its control measure.
    Spectral {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        minimal_support: bool,
    },
    /// Re-run the decompositions and compare against brute-force oracles.
    Check {
        #[command(flatten)]
        common: Common,
        /// Seed for the randomized nearest-point search.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random candidates per nearest-point check.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

fn write_report(common: &Common, report: &serde_json::Value) -> Result<(), CliError> {
    let text = format!("{:#}\n", report);
    match common.output.as_deref() {
        None | Some("-") => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::semantic(format!("cannot write {path}: {e}"))),
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let common = match &cli.command {
        Command::Decompose { common, .. }
        | Command::HahnJordan { common }
        | Command::Lebesgue { common, .. }
        | Command::AtomicDiffuse { common }
        | Command::Support { common }
        | Command::Vector { common, .. }
        | Command::Spectral { common, .. }
        | Command::Check { common, .. } => common,
    };
    let problem = problem::load(&common.input)?;
    match &cli.command {
        Command::Decompose {
            minimal_support, ..
        } => {
            let report = commands::decompose(&problem, *minimal_support)?;
            write_report(common, &report)?;
            Ok(0)
        }
        Command::HahnJordan { .. } => {
            let report = commands::hahn(&problem)?;
            write_report(common, &report)?;
            Ok(0)
        }
        Command::Lebesgue { wrt, .. } => {
            let report = commands::lebesgue(&problem, wrt)?;
            write_report(common, &report)?;
            Ok(0)
        }
        Command::AtomicDiffuse { .. } => {
            let report = commands::atomic_diffuse(&problem)?;
            write_report(common, &report)?;
            Ok(0)
        }
        Command::Support { .. } => {
            let report = commands::support(&problem)?;
            write_report(common, &report)?;
            Ok(0)
        }
        Command::Vector {
            minimal_support, ..
        } => {
            let report = commands::vector(&problem, *minimal_support)?;
            write_report(common, &report)?;
            Ok(0)
        }
        Command::Spectral {
            minimal_support, ..
        } => {
            let report = commands::spectral(&problem, *minimal_support)?;
            write_report(common, &report)?;
            Ok(0)
        }
        Command::Check { seed, samples, .. } => {
            let (report, ok) = commands::check(&problem, *seed, *samples)?;
            write_report(common, &report)?;
            if ok {
                Ok(0)
            } else {
                eprintln!("mdc: oracle disagreement, see the failed checks in the report");
                Ok(3)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("mdc: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
