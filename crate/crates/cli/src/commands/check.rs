use swanson_core::oplang::{check_zero, OplangError, Prelude};
use swanson_core::susy::build_operator_set;
use swanson_core::ExtensionSpec;

use super::echo_common;
use crate::output::RunReport;
use crate::{CliError, Outcome, RunConfig};

pub const DEFAULT_M: usize = 2;

/// Binds the prelude for the configured model and checks that
/// `expression` vanishes.
pub fn check(expression: &str, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let m = cfg.m.unwrap_or(DEFAULT_M);
    let spec = ExtensionSpec::new(m).map_err(CliError::invalid)?;
    let g = cfg.x_grid(&cfg.params)?;
    let os = build_operator_set(&cfg.params, &spec, &g).map_err(CliError::invalid)?;
    let outcome = match check_zero(expression, &Prelude::new(&os), cfg.tol) {
        Ok(o) => o,
        Err(OplangError::Parse(e)) => {
            return Err(CliError::Parse {
                message: e.to_string(),
                expression: expression.to_string(),
                caret: format!("{}^", " ".repeat(e.offset)),
            })
        }
        Err(e) => return Err(CliError::invalid(e)),
    };
    let mut report = RunReport::new("check");
    echo_common(&mut report, cfg);
    report.env_value("m", m);
    report.env_value("expression", outcome.expression.clone());
    report.push_check(&outcome.to_check());
    Ok(Outcome { stdout: report.render(cfg.format)?, pass: report.pass })
}
