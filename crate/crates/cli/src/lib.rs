//! Library side of the `swanson` command: argument types, config merging,
//! report formatting and the subcommands.

pub mod args;
pub mod commands;
pub mod config;
pub mod output;

use thiserror::Error;

pub use args::{Cli, Command, CommonArgs, Format, Suite};
pub use config::RunConfig;
pub use output::RunReport;

/// Every variant maps to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{message}\n  {expression}\n  {caret}")]
    Parse { message: String, expression: String, caret: String },
}

impl CliError {
    pub fn invalid(e: impl std::fmt::Display) -> Self {
        CliError::Invalid(e.to_string())
    }
}

/// Rendered output plus the verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub pass: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Spectrum(a) => commands::spectrum(&RunConfig::resolve(a)?),
        Command::Verify(a) => commands::verify(&RunConfig::resolve(a)?),
        Command::Twodim(a) => commands::twodim(&RunConfig::resolve(a)?),
        Command::Check { expression, common } => commands::check(expression, &RunConfig::resolve(common)?),
        Command::Potential(a) => commands::potential(&RunConfig::resolve(a)?),
    }
}
