//! `pcm`: weights, consistency and property audits for pairwise comparison
//! matrices from the command line.
//!
//! Exit codes: 0 when every audit is satisfied (or the command has no
//! verdict), 1 when an audit found a violation, 2 on any error or an
//! inconclusive audit.

mod commands;
mod input;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pcm_core::{Method, Normalization};

/// Environment variable naming the random index cache file.
pub const RI_CACHE_ENV: &str = "PCM_RI_CACHE";

#[derive(Debug, Parser)]
#[command(name = "pcm", version, about = "Pairwise comparison matrix toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print lambda_max, CI/CR and weight vectors for one matrix.
    Weigh(WeighArgs),
    /// Run property audits; JSON lines on stdout, CSV summary with --out.
    Audit(AuditArgs),
    /// Run a seeded Monte Carlo experiment described by a JSON spec.
    Simulate(SimulateArgs),
    /// Estimate random index values and write a cache file.
    Ri(RiArgs),
}

#[derive(Debug, Args)]
struct MatrixSource {
    /// Matrix files (.csv, otherwise JSON).
    files: Vec<PathBuf>,
    /// Built-in matrix; repeatable. Parametric ones take `name:value`.
    #[arg(long = "fixture", value_name = "NAME")]
    fixtures: Vec<String>,
}

#[derive(Debug, Args)]
pub struct WeighArgs {
    #[command(flatten)]
    source: MatrixSource,
    /// Weighting methods to show; defaults to all.
    #[arg(long = "method", value_parser = parse_method, value_delimiter = ',')]
    methods: Vec<Method>,
    #[arg(long, default_value = "sum1", value_parser = parse_norm)]
    norm: Normalization,
    /// Print one JSON object instead of the table.
    #[arg(long)]
    json: bool,
    /// Directory for weigh.json and the manifest.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[command(flatten)]
    source: MatrixSource,
    /// asymmetry, group, scale, monotonic, efficiency or all.
    #[arg(long, default_value = "all")]
    property: String,
    #[arg(long = "method", default_value = "em", value_parser = parse_method, value_delimiter = ',')]
    methods: Vec<Method>,
    #[arg(long, default_value = "sum1", value_parser = parse_norm)]
    norm: Normalization,
    /// Comma-separated exponents for the scale audit.
    #[arg(long, value_delimiter = ',')]
    alpha_grid: Option<Vec<f64>>,
    /// Voter weights for the group audit, one per matrix, summing to 1.
    #[arg(long, value_delimiter = ',')]
    group_weights: Option<Vec<f64>>,
    /// Directory for audit.jsonl, audit_summary.csv and the manifest.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Experiment spec (JSON).
    spec: PathBuf,
    /// Overrides the spec's seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides the spec's trial count.
    #[arg(long)]
    trials: Option<u64>,
    /// Output directory for trials.csv, summary.csv and the manifest.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
pub struct RiArgs {
    /// Orders to estimate: `N` or `LO..HI` (inclusive).
    #[arg(long = "n", default_value = "3..9", value_parser = parse_range)]
    orders: (usize, usize),
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Cache file to write; defaults to $PCM_RI_CACHE, then ri_cache.json.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: pcm_core::Error| e.to_string())
}

fn parse_norm(s: &str) -> Result<Normalization, String> {
    match s {
        "sum1" | "sum100" => s.parse().map_err(|e: pcm_core::Error| e.to_string()),
        _ => Err(format!("expected sum1 or sum100, got {s:?}")),
    }
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("expected N or LO..HI, got {s:?}");
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.trim_start_matches('=')),
        None => (s, s),
    };
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo < 3 || hi < lo {
        return Err(format!("order range {s:?} must satisfy 3 <= LO <= HI"));
    }
    Ok((lo, hi))
}

/// What a successful command found.
pub enum Outcome {
    Done,
    Violation,
    Inconclusive,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Weigh(args) => commands::weigh(args),
        Command::Audit(args) => commands::audit(args),
        Command::Simulate(args) => commands::simulate(args),
        Command::Ri(args) => commands::ri(args),
    };
    match result {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Ok(Outcome::Inconclusive) => {
            eprintln!("pcm: some audits were inconclusive");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
