//! Command-line surface for liarbound.

mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::{List, Settings};

pub const EXIT_CODES: &str = "\
Exit status:
  0  success (for `game`: the symbol was identified)
  1  runtime error (I/O, unreadable input)
  2  usage error
  3  finding: `game` ended inconclusive, or `bound --n` is infeasible
  4  internal inconsistency between bounds, game engine and oracles

Options marked [config] may also come from SPB_<KEY> environment variables or a
key=value config file (--config or SPB_CONFIG); flags win over the environment,
which wins over the file. Keys are the long flag names with '-' replaced by '_'.";

#[derive(Debug, Parser)]
#[command(name = "liarbound", version, about = "Sphere-packing and liar-game lower bounds on binary code length", after_help = EXIT_CODES)]
pub struct Cli {
    /// key=value config file
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Both lower bounds for one (m, t)
    Bound(BoundArgs),
    /// Bounds over a grid of (m, t), written as CSV
    Sweep(SweepArgs),
    /// Play or replay one liar game and print its trace
    Game(GameArgs),
    /// Cross-check the bounds against exhaustive oracles on a small grid
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    /// Number of codewords
    #[arg(short = 'm')]
    pub m: u64,
    /// Correctable bit errors
    #[arg(short = 't')]
    pub t: u64,
    /// Print the K-sequence of every length examined
    #[arg(long)]
    pub show_k_sequence: bool,
    /// Examine this length instead of the searched range
    #[arg(long = "n")]
    pub n: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Smallest code size [config: m_min, default 1]
    #[arg(long)]
    pub m_min: Option<u64>,
    /// Largest code size [config: m_max, default 100000]
    #[arg(long)]
    pub m_max: Option<u64>,
    /// Comma-separated capabilities [config: t, default 1,2,3,4]
    #[arg(short = 't', long = "t")]
    pub t: Option<List<u64>>,
    /// CSV destination, `-` for stdout [config: output, default -]
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
    /// Evaluate cells on one thread
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("mode").required(true).args(["script", "auto"]))]
pub struct GameArgs {
    #[arg(short = 'm')]
    pub m: usize,
    #[arg(short = 't')]
    pub t: usize,
    #[arg(short = 'n')]
    pub n: usize,
    /// Question script; answers left out are chosen by the max-weight adversary
    #[arg(long)]
    pub script: Option<PathBuf>,
    /// Balanced questioner against the max-weight adversary
    #[arg(long)]
    pub auto: bool,
    /// Trace destination, `-` for stdout
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
    /// Survivor count up to which questions are optimised exactly [config: exhaustive_cap, default 20]
    #[arg(long)]
    pub exhaustive_cap: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Largest code size in the grid [config: max_m, default 6]
    #[arg(long)]
    pub max_m: Option<usize>,
    /// Largest capability in the grid [config: max_t, default 2]
    #[arg(long)]
    pub max_t: Option<usize>,
    /// Question budget cap for the game solver [config: max_n, default 10]
    #[arg(long)]
    pub max_n: Option<usize>,
    /// Length cap for exhaustive code search [config: max_code_length, default 12]
    #[arg(long)]
    pub max_code_length: Option<u32>,
    /// File of codewords (bit strings, one per line) to validate and compare
    #[arg(long)]
    pub check_code: Option<PathBuf>,
    /// Capability the --check-code code must reach
    #[arg(long, default_value_t = 1)]
    pub check_t: u64,
}

/// How a successful run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Finding,
    Inconsistent,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Finding => 3,
            Status::Inconsistent => 4,
        }
    }
}

/// Bad argument values that clap cannot see (e.g. `m = 0`).
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<Status> {
    let settings = Settings::load(cli.config.as_deref())?;
    match cli.command {
        Command::Bound(a) => commands::bound(a, out),
        Command::Sweep(a) => commands::sweep(a, &settings, out, err),
        Command::Game(a) => commands::game(a, &settings, out),
        Command::Verify(a) => commands::verify(a, &settings, out),
    }
}
