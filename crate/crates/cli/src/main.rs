use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nonlocality::json::FormatError;

mod commands;
mod report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

/// Bell, Hardy and pseudo-telepathy demonstrations and a no-go classifier
/// for bipartite behaviors.
#[derive(Debug, Parser)]
#[command(name = "nonlocality", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Probabilities above this count as possible.
    #[arg(long, global = true, default_value_t = 1e-9)]
    eps: f64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Simulated rounds; `chsh` only simulates when this is given.
    #[arg(long, global = true)]
    rounds: Option<u64>,
    #[arg(long, global = true)]
    input: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Local bound, quantum value and correlators for CHSH.
    Chsh,
    /// Hardy probabilities, argument trace and verdict.
    Hardy,
    /// Parity tables, classical and quantum values of the Magic Square game.
    MagicSquare,
    /// Classify the behavior in --input.
    Classify,
    /// Local bound of the expression in --input, or of a game.
    LhvBound {
        /// Built-in game name ("magic-square", "chsh-game") or a game file.
        #[arg(long)]
        game: Option<String>,
    },
    /// Sample rounds from the behavior in --input (CHSH quantum by default).
    Simulate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub input_path: Option<PathBuf>,
    pub output_format: Format,
    pub eps_support: f64,
    pub seed: u64,
    pub rounds: Option<u64>,
}

impl RunConfig {
    fn from_cli(cli: Cli) -> Result<Self, CliError> {
        if !(cli.eps.is_finite() && cli.eps > 0.0) {
            return Err(CliError::Validation(format!(
                "--eps must be positive, got {}",
                cli.eps
            )));
        }
        if cli.rounds == Some(0) {
            return Err(CliError::Validation("--rounds must be at least 1".into()));
        }
        Ok(Self {
            command: cli.command,
            input_path: cli.input,
            output_format: cli.format,
            eps_support: cli.eps,
            seed: cli.seed,
            rounds: cli.rounds,
        })
    }

    pub fn read_input(&self) -> Result<Option<String>, CliError> {
        self.input_path.as_deref().map(read_file).transpose()
    }

    pub fn require_input(&self) -> Result<String, CliError> {
        self.read_input()?
            .ok_or_else(|| CliError::Validation("this command needs --input <path>".into()))
    }
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))
}

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Parse(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Parse(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "validation error: {m}"),
            CliError::Parse(m) => write!(f, "parse error: {m}"),
        }
    }
}

impl From<nonlocality::Error> for CliError {
    fn from(e: nonlocality::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Parse(e) => CliError::Parse(e.to_string()),
            FormatError::Schema(m) => CliError::Parse(m),
            FormatError::Validation(e) => e.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match RunConfig::from_cli(cli).and_then(|cfg| commands::run(&cfg)) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
