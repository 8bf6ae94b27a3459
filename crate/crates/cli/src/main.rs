//! `plxmin` command-line front end.
//!
//! Exit codes: 0 success, 1 usage, 2 I/O or unreadable data, 3 insufficient data.

mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "plxmin",
    version,
    about = "Lower-bound estimation for discrete power-law tails"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Draw a seeded synthetic sample and write it to a file.
    Generate(GenerateArgs),
    /// Fit α by exact maximum likelihood at a given (or estimated) xmin.
    Fit(FitArgs),
    /// Estimate xmin with one of the three scans.
    Estimate(EstimateArgs),
    /// Tabulate α, KS and PMF distances at chosen xmin values.
    Inspect(InspectArgs),
    /// Run the estimator comparison over a grid of true xmin values.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BodyArg {
    /// Exponential body below xmin, power-law tail above.
    Eq1,
    /// Discrete power law on {xmin, xmin + 1, ...}.
    Pure,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Binary,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Traditional,
    Getxmin,
    Getxmin2,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Data file: one positive integer per line, `#` comments allowed.
    #[arg(long)]
    input: PathBuf,
    /// Read the length-prefixed little-endian u64 format instead of text.
    #[arg(long)]
    binary: bool,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    xmin: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = BodyArg::Eq1)]
    body: BodyArg,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct FitArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Lower bound to fit at; found by the exhaustive KS scan when omitted.
    #[arg(long)]
    xmin: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct EstimateArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Traditional)]
    method: MethodArg,
    /// Guess on the true xmin (required by getxmin and getxmin2).
    #[arg(long)]
    g: Option<f64>,
    /// Confidence in the guess, percent.
    #[arg(long, default_value_t = 90)]
    c: u32,
    /// Consecutive distance increases that stop the scan.
    #[arg(long, default_value_t = 5)]
    k: usize,
    /// Also run this many bootstrap replicates.
    #[arg(long)]
    bootstrap: Option<usize>,
    /// Seed for the bootstrap resamples.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct InspectArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Candidate lower bounds, comma separated.
    #[arg(long, value_delimiter = ',')]
    xmins: Vec<u64>,
    /// Write the empirical CCDF as `x Pr(X >= x)` lines to this file.
    #[arg(long)]
    dump: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// TOML file whose keys mirror the experiment fields; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    xmin_grid: Option<Vec<u64>>,
    /// `true_xmin` or `fixed:<g>`.
    #[arg(long)]
    g_policy: Option<String>,
    #[arg(long)]
    c: Option<u32>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    seeds: Option<Vec<u64>>,
    /// Any of scan_all, get_xmin, get_xmin2, comma separated.
    #[arg(long, value_delimiter = ',')]
    methods: Option<Vec<String>>,
    /// Directory for report.csv, report.json, estimates.dat and timings.dat.
    #[arg(long, default_value = "bench-out")]
    out: PathBuf,
    /// Run cells one at a time (use for timing comparisons).
    #[arg(long)]
    serial: bool,
    /// Worker threads for parallel execution.
    #[arg(long)]
    threads: Option<usize>,
    /// Print the summary as JSON instead of a table.
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Generate(args) => commands::generate(args),
        Command::Fit(args) => commands::fit(args),
        Command::Estimate(args) => commands::estimate(args),
        Command::Inspect(args) => commands::inspect(args),
        Command::Bench(args) => commands::bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
