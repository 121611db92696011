//! `bellbox` command-line interface.
//!
//! Exit codes: `0` success, `2` argument or parse error, `3` domain or
//! validation error.

pub mod angle;
pub mod commands;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use bellbox_core::Angle;
use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use angle::{parse_angle, ParseError};
pub use report::{Format, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

impl From<bellbox_core::Error> for CliError {
    fn from(e: bellbox_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "bellbox",
    version,
    about = "Quantum and classical Bell-box simulator"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Tolerance for the discriminator (default 0.01) or the linear-independence
    /// test of `operator` (default 1e-12).
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Setting {
    /// Polarizer angle on side A: decimal radians or a π fraction such as `3pi/8`.
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub alpha: Angle,
    /// Polarizer angle on side B.
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub beta: Angle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Qm,
    Classical,
}

impl From<ModelArg> for bellbox_core::Model {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Qm => bellbox_core::Model::Quantum,
            ModelArg::Classical => bellbox_core::Model::Classical,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Quantized,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form quantum event probabilities.
    Qm(Setting),
    /// Closed-form classical event probabilities.
    Classical(Setting),
    /// Four-configuration Bell inequality.
    Chsh {
        #[arg(long, value_enum, default_value_t = ModelArg::Qm)]
        model: ModelArg,
        /// Eight comma-separated angles: α,β, α,β′, α′,β, α′,β′.
        #[arg(long, allow_hyphen_values = true)]
        configs: Option<String>,
    },
    /// Statistical operator with its weights, states and Gram analysis.
    Operator {
        #[command(flatten)]
        setting: Setting,
        #[arg(long, value_enum, default_value_t = ModelArg::Qm)]
        model: ModelArg,
    },
    /// Monte-Carlo marble experiment.
    Marbles {
        #[command(flatten)]
        setting: Setting,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        #[arg(long, default_value_t = bellbox_core::marbles::DEFAULT_BOX_SIZE)]
        box_size: u32,
        /// Exchange the two right-hand boxes.
        #[arg(long)]
        swap: bool,
        /// Run on the calling thread only.
        #[arg(long)]
        serial: bool,
    },
    /// Incoherent mixture of configurations read from a JSON file.
    Mixture { config: PathBuf },
    /// Classify probabilities measured at α = β = π/4.
    Discriminate {
        /// Four comma-separated probabilities in the order yy,yn,ny,nn.
        #[arg(long)]
        probs: String,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Result<(Report, Format), RunError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(RunError::Clap)?;
    let report = commands::execute(&cli).map_err(RunError::Cli)?;
    Ok((report, cli.format))
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Clap(clap::Error),
    #[error(transparent)]
    Cli(CliError),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Clap(e) if !e.use_stderr() => EXIT_OK,
            RunError::Clap(_) => EXIT_USAGE,
            RunError::Cli(e) => e.exit_code(),
        }
    }
}
