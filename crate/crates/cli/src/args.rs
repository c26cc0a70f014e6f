use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

#[derive(Debug, Parser)]
#[command(name = "swanson", version, about = "Spectra, identity checks and 2D integrals for the Swanson oscillator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Numerical against exact energies of h (or of the extended partner with --m).
    Spectrum(CommonArgs),
    /// Run the factorization, intertwining, ladder and pseudo-Hermiticity suites.
    Verify(CommonArgs),
    /// Check the 2D integrals of motion, with a negative control.
    Twodim(CommonArgs),
    /// Evaluate an operator expression and check that it vanishes.
    Check {
        /// Expression such as "[hplus, L] + twoOverJ*L".
        expression: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Sample the partner potential on the z-grid.
    Potential(CommonArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    #[default]
    All,
    Intertwine,
    Ladder,
    Pseudo,
    Susy,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Intertwine => "intertwine",
            Suite::Ladder => "ladder",
            Suite::Pseudo => "pseudo",
            Suite::Susy => "susy",
        }
    }
}

#[derive(Clone, Debug, Default, Args)]
pub struct CommonArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Second dimension; each missing value falls back to the first.
    #[arg(long, allow_negative_numbers = true)]
    pub omega2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta2: Option<f64>,
    /// Seed index of the extension (even; 0 means no extension).
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub m2: Option<usize>,
    /// Ladder powers of the 2D integrals.
    #[arg(long)]
    pub n1: Option<usize>,
    #[arg(long)]
    pub n2: Option<usize>,
    /// Grid half width in z-units.
    #[arg(long, allow_negative_numbers = true)]
    pub grid_l: Option<f64>,
    /// Number of grid points (odd).
    #[arg(long)]
    pub grid_n: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub tol: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Flat JSON object with the same keys as the flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// The run is a negative control: pass when the violation is detected.
    #[arg(long)]
    pub expect_fail: bool,
    /// Levels (spectrum) or product states (twodim) to examine.
    #[arg(long)]
    pub levels: Option<usize>,
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
}
