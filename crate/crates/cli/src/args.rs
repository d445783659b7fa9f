use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use epdescent_core::properties::{DEFAULT_CASES, DEFAULT_SEED};
use epdescent_core::DEFAULT_DEPTH_CAP;

#[derive(Parser, Debug)]
#[command(name = "epdescent", version, about = "2-isogeny descent for y^2 = x(x^2 + p) over imaginary quadratic fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Selmer groups, ledger and table comparison for one prime.
    Descent(DescentArgs),
    /// Descent over a range of primes, cached as JSONL.
    Sweep(SweepArgs),
    /// Dirichlet coefficients over Q and Q(i) and the base-change check.
    Lseries(LseriesArgs),
    /// Tate's algorithm at the bad places, against the reduction tables.
    Reduce(PrimeArgs),
    /// The torsion subgroup with its evidence.
    Torsion(PrimeArgs),
    /// Randomized property suites.
    Props(PropsArgs),
    /// All acceptance checks, one line each.
    VerifyPaper(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    Gauss,
    Root2,
    Root7,
    Rootq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    #[arg(long, value_enum, default_value = "gauss")]
    pub field: FieldArg,
    /// q for --field rootq (a prime = 3 mod 8).
    #[arg(short = 'q', long)]
    pub q: Option<u64>,
    /// Allow Q(sqrt(-q)) of class number > 1.
    #[arg(long)]
    pub allow_nonprincipal: bool,
}

#[derive(Args, Debug)]
pub struct DescentArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(short = 'p', long)]
    pub p: u64,
    #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
    pub depth_cap: u32,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value_t = 3)]
    pub from: u64,
    /// Inclusive upper end of the range.
    #[arg(long)]
    pub to: u64,
    #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
    pub depth_cap: u32,
    #[arg(long, env = "EPDESCENT_CACHE", default_value = "epdescent-sweep.jsonl")]
    pub cache: PathBuf,
    /// Worker threads (0: one per core).
    #[arg(long, env = "EPDESCENT_JOBS", default_value_t = 0)]
    pub jobs: usize,
    /// Recompute primes already in the cache.
    #[arg(long)]
    pub force: bool,
}

#[derive(Args, Debug)]
pub struct LseriesArgs {
    #[arg(short = 'p', long)]
    pub p: u64,
    #[arg(long, default_value_t = 1000)]
    pub bound: u64,
    #[arg(long, value_enum, default_value = "gauss")]
    pub field: FieldArg,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct PrimeArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(short = 'p', long)]
    pub p: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct PropsArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_CASES)]
    pub cases: usize,
    /// Run one suite only.
    #[arg(long)]
    pub suite: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Small bounds everywhere (seconds instead of a minute).
    #[arg(long)]
    pub quick: bool,
    /// Only these criteria (1-8); repeatable.
    #[arg(long = "criterion", value_parser = clap::value_parser!(u8).range(1..=8))]
    pub criteria: Vec<u8>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub cases: Option<usize>,
    /// One JSON document instead of text lines.
    #[arg(long)]
    pub json: bool,
}
