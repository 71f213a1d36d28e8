mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use revbch::distance::DEFAULT_DISTANCE_BUDGET;
use revbch::Variant;
use thiserror::Error;

use crate::output::{Format, RunLog, Sink};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] revbch::Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use revbch::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(E::NoWitness(_) | E::BudgetExceeded { .. }) => 1,
            CliError::Core(_) => 2,
            _ => 1,
        }
    }
}

/// Reversible BCH codes: constructions, dimension formulas and distance
/// certificates.
#[derive(Debug, Parser)]
#[command(name = "revbch", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Directory for JSON-lines run logs.
    #[arg(long, global = true, env = "REVBCH_LOG_DIR")]
    log_dir: Option<PathBuf>,
    /// Enumeration budget for distance searches and oracles.
    #[arg(long, global = true, default_value_t = DEFAULT_DISTANCE_BUDGET as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generator, dimension and distance report for one code.
    Info(CodeArgs),
    /// Regenerate a published parameter table.
    Table(TableArgs),
    /// Run an invariant sweep.
    Verify(VerifyArgs),
    /// Construct a low-weight codeword certificate.
    Witness(WitnessArgs),
}

#[derive(Debug, Args)]
pub struct CodeArgs {
    #[arg(long, default_value_t = 2)]
    pub q: u64,
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub delta: u64,
    #[arg(long, default_value = "overline")]
    pub variant: Variant,
    /// Field modulus over the prime field, e.g. "x^3-x+1".
    #[arg(long)]
    pub modulus: Option<String>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub paper: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Cosets,
    Dimension,
    Runs,
    Degree,
    Bounds,
    Distance,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Restrict the sweep to these q (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub q: Vec<u64>,
    /// Restrict the sweep to these m (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub m: Vec<u32>,
    /// Longest sequence length for the run-count suite.
    #[arg(long, default_value_t = 12)]
    pub max_s: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WitnessKind {
    Subgroup,
    Subspace,
    Reversible,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[arg(long, value_enum)]
    pub kind: WitnessKind,
    #[arg(long, default_value_t = 2)]
    pub q: u64,
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub delta: Option<u64>,
    /// Subspace dimension for `--kind subspace`.
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub modulus: Option<String>,
    /// Codeword of the narrow-sense code to lift, for `--kind reversible`.
    #[arg(long)]
    pub codeword: Option<String>,
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Info(_) => "info",
        Command::Table(_) => "table",
        Command::Verify(_) => "verify",
        Command::Witness(_) => "witness",
    }
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let name = command_name(&cli.command);
    let log_dir = match (&cli.log_dir, &cli.command) {
        (Some(d), _) => Some(d.clone()),
        (None, Command::Verify(_)) => Some(PathBuf::from("logs")),
        _ => None,
    };
    let mut log = match log_dir {
        Some(dir) => RunLog::create(&dir, name, serde_json::json!(std::env::args().skip(1).collect::<Vec<_>>()))?,
        None => RunLog::disabled(),
    };
    let mut sink = Sink::open(cli.format, cli.out.as_deref())?;
    let budget = cli.budget as u128;
    let start = Instant::now();
    let result = match &cli.command {
        Command::Info(a) => commands::info(a, budget, &mut sink, &mut log),
        Command::Table(a) => commands::table(a, budget, &mut sink, &mut log),
        Command::Verify(a) => commands::verify(a, budget, &mut sink, &mut log),
        Command::Witness(a) => commands::witness(a, budget, &mut sink, &mut log),
    };
    let status = match &result {
        Ok(true) => "pass".to_string(),
        Ok(false) => "fail".to_string(),
        Err(e) => format!("error: {e}"),
    };
    log.finish(&status, start.elapsed().as_millis())?;
    if let Some(p) = log.path() {
        eprintln!("log: {}", p.display());
    }
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
