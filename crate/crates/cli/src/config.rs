use std::fs;

use serde::Deserialize;
use swanson_core::{Grid, ModelParams};

use crate::args::{CommonArgs, Format, Suite};
use crate::CliError;

pub const DEFAULT_OMEGA: f64 = 2.0;
pub const DEFAULT_ALPHA: f64 = 0.5;
pub const DEFAULT_BETA: f64 = 0.25;
pub const DEFAULT_TOL: f64 = 1e-4;
pub const MIN_POINTS: usize = 21;
pub const MAX_POINTS: usize = 100_001;

/// Config file contents; every key is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub omega: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub omega2: Option<f64>,
    pub alpha2: Option<f64>,
    pub beta2: Option<f64>,
    pub m: Option<usize>,
    pub m2: Option<usize>,
    pub n1: Option<usize>,
    pub n2: Option<usize>,
    #[serde(alias = "grid_l")]
    pub grid_l: Option<f64>,
    #[serde(alias = "grid_n")]
    pub grid_n: Option<usize>,
    pub tol: Option<f64>,
    pub format: Option<Format>,
    pub levels: Option<usize>,
    pub suite: Option<Suite>,
    #[serde(alias = "expect_fail")]
    pub expect_fail: Option<bool>,
}

impl FileConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("config: {e}")))
    }
}

/// Validated run settings.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub params: ModelParams,
    pub params2: ModelParams,
    pub m: Option<usize>,
    pub m2: Option<usize>,
    pub n1: Option<usize>,
    pub n2: Option<usize>,
    pub grid_l: f64,
    pub grid_n: usize,
    pub tol: f64,
    pub format: Format,
    pub levels: Option<usize>,
    pub suite: Suite,
    pub expect_fail: bool,
}

fn model(omega: f64, alpha: f64, beta: f64, label: &str) -> Result<ModelParams, CliError> {
    ModelParams::new(omega, alpha, beta).map_err(|e| CliError::Invalid(format!("{label}: {e}")))
}

impl RunConfig {
    /// Flags override the config file, which overrides the defaults.
    pub fn resolve(flags: &CommonArgs) -> Result<Self, CliError> {
        let file = match &flags.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| CliError::Invalid(format!("cannot read config {}: {e}", path.display())))?;
                FileConfig::from_json(&text)?
            }
            None => FileConfig::default(),
        };
        Self::merge(flags, &file)
    }

    pub fn merge(flags: &CommonArgs, file: &FileConfig) -> Result<Self, CliError> {
        let omega = flags.omega.or(file.omega).unwrap_or(DEFAULT_OMEGA);
        let alpha = flags.alpha.or(file.alpha).unwrap_or(DEFAULT_ALPHA);
        let beta = flags.beta.or(file.beta).unwrap_or(DEFAULT_BETA);
        let params = model(omega, alpha, beta, "model")?;
        let params2 = model(
            flags.omega2.or(file.omega2).unwrap_or(omega),
            flags.alpha2.or(file.alpha2).unwrap_or(alpha),
            flags.beta2.or(file.beta2).unwrap_or(beta),
            "second model",
        )?;

        let grid_l = flags.grid_l.or(file.grid_l).unwrap_or(Grid::DEFAULT_HALF_WIDTH);
        if !(grid_l.is_finite() && grid_l > 0.0) {
            return Err(CliError::Invalid(format!("grid-l must be positive and finite, got {grid_l}")));
        }
        let grid_n = flags.grid_n.or(file.grid_n).unwrap_or(Grid::DEFAULT_POINTS);
        if grid_n.is_multiple_of(2) || !(MIN_POINTS..=MAX_POINTS).contains(&grid_n) {
            return Err(CliError::Invalid(format!(
                "grid-n must be odd and in [{MIN_POINTS}, {MAX_POINTS}], got {grid_n}"
            )));
        }
        let tol = flags.tol.or(file.tol).unwrap_or(DEFAULT_TOL);
        if !(tol.is_finite() && tol > 0.0) {
            return Err(CliError::Invalid(format!("tolerance must be > 0, got {tol}")));
        }
        let levels = flags.levels.or(file.levels);
        if levels == Some(0) {
            return Err(CliError::Invalid("levels must be at least 1".into()));
        }

        Ok(Self {
            params,
            params2,
            m: flags.m.or(file.m),
            m2: flags.m2.or(file.m2),
            n1: flags.n1.or(file.n1),
            n2: flags.n2.or(file.n2),
            grid_l,
            grid_n,
            tol,
            format: flags.format.or(file.format).unwrap_or_default(),
            levels,
            suite: flags.suite.or(file.suite).unwrap_or_default(),
            expect_fail: flags.expect_fail || file.expect_fail.unwrap_or(false),
        })
    }

    /// Grid in z-units.
    pub fn z_grid(&self) -> Result<Grid, CliError> {
        Grid::new(self.grid_l, self.grid_n).map_err(|e| CliError::Invalid(e.to_string()))
    }

    /// The z-grid re-expressed in x for `p`.
    pub fn x_grid(&self, p: &ModelParams) -> Result<Grid, CliError> {
        Grid::in_x_units(self.grid_l, self.grid_n, swanson_core::derive_params(p).delta)
            .map_err(|e| CliError::Invalid(e.to_string()))
    }
}
