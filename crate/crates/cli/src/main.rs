mod cache;
mod commands;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use recolour_core::DEFAULT_STATE_LIMIT;

/// Exit codes shared by every command.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const INPUT_ERROR: u8 = 1;
    pub const NEGATIVE: u8 = 2;
    pub const INCONCLUSIVE: u8 = 3;
}

#[derive(Debug, Parser)]
#[command(name = "recolour", version, about = "Recolouring paths and reconfiguration graphs of graph colourings")]
pub struct Cli {
    /// Largest number of colour vectors (k^n) an exhaustive search may touch.
    #[arg(long, global = true, env = "RECOLOR_LIMIT", default_value_t = DEFAULT_STATE_LIMIT,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub limit: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find a recolouring sequence between two colourings.
    Path(PathArgs),
    /// Check a recolouring sequence step by step.
    Validate(ValidateArgs),
    /// Enumerate the reconfiguration graph and summarise its components.
    Explore(ExploreArgs),
    /// Decide whether two colourings are connected by a recolouring sequence.
    Decide(PathArgs),
    /// Count frozen colourings.
    Census(ExploreArgs),
    /// Report the empirical type of the reconfiguration graph.
    Classify(ExploreArgs),
    /// Print a degeneracy ordering.
    Degeneracy(GraphArg),
    /// Recolour every vertex using the top colour Δ+1 to a smaller colour.
    Eliminate(EliminateArgs),
    /// Run every exhaustive check over all small connected graphs.
    VerifyCorpus(VerifyCorpusArgs),
}

#[derive(Debug, Args)]
pub struct GraphArg {
    /// Edge-list file: header `n m`, then one `u v` line per edge.
    #[arg(long)]
    pub graph: PathBuf,
}

#[derive(Debug, Args)]
pub struct PathArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub colouring_a: PathBuf,
    #[arg(long)]
    pub colouring_b: PathBuf,
    /// Palette size; defaults to the palette declared in the colouring files.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub k: Option<u32>,
    /// Write the sequence here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub colouring: PathBuf,
    #[arg(long)]
    pub sequence: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExploreArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub k: u32,
}

#[derive(Debug, Args)]
pub struct EliminateArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub colouring: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyCorpusArgs {
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..=10))]
    pub max_n: u64,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..=10))]
    pub min_n: u64,
    /// Only graphs whose maximum degree is at most this.
    #[arg(long)]
    pub max_degree: Option<u64>,
    /// Palettes for the decision cross-check, e.g. `3..=5` or `4`.
    #[arg(long, default_value = "3..=5", value_parser = parse_k_range)]
    pub k: (u32, u32),
    /// Seed for the sampled colouring pairs.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Directory holding the generated corpus.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Directory for reproducer files when a check fails.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_k_range(s: &str) -> Result<(u32, u32), String> {
    let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"));
    let (lo, hi) = match s.split_once("..=") {
        Some((lo, hi)) => (parse(lo)?, parse(hi)?),
        None => {
            let k = parse(s)?;
            (k, k)
        }
    };
    if lo == 0 || lo > hi {
        return Err(format!("empty or invalid palette range {s:?}"));
    }
    Ok((lo, hi))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code_for(&e))
        }
    }
}
