use swanson_core::report::Check;
use swanson_core::twodim::{build_2d, verify_superintegrability, TwoDimModel, CONSTRAINT_TOLERANCE};
use swanson_core::{ExtensionSpec, Grid};

use super::{echo_common, echo_model};
use crate::output::{RunReport, Table};
use crate::{CliError, Outcome, RunConfig};

pub const DEFAULT_STATES: usize = 100;
/// Product states examined by the automatic negative control.
pub const CONTROL_STATES: usize = 40;

fn extension(m: Option<usize>) -> Result<Option<ExtensionSpec>, CliError> {
    match m {
        None | Some(0) => Ok(None),
        Some(m) => ExtensionSpec::new(m).map(Some).map_err(CliError::invalid),
    }
}

/// Commensurate models are checked directly and paired with the negative
/// control `(n1, n2 + 1)`. With `expect_fail` the given model is itself the
/// control, and the verdict is whether the violation is detected.
pub fn twodim(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (Some(n1), Some(n2)) = (cfg.n1, cfg.n2) else {
        return Err(CliError::Invalid("twodim needs both --n1 and --n2".into()));
    };
    let params = [cfg.params, cfg.params2];
    let ext = [extension(cfg.m)?, extension(cfg.m2)?];
    let grids: [Grid; 2] = [cfg.x_grid(&params[0])?, cfg.x_grid(&params[1])?];
    let n_states = cfg.levels.unwrap_or(DEFAULT_STATES);
    let model = TwoDimModel::new(params, ext.clone(), n1, n2).map_err(CliError::invalid)?;
    let sys = build_2d(&model, &grids[0], &grids[1]).map_err(CliError::invalid)?;
    let result = verify_superintegrability(&sys, n_states, cfg.tol).map_err(CliError::invalid)?;

    let mut report = RunReport::new("twodim");
    echo_common(&mut report, cfg);
    echo_model(&mut report, "2", &params[1]);
    for (key, v) in [("m", cfg.m), ("m2", cfg.m2)] {
        if let Some(v) = v {
            report.env_value(key, v);
        }
    }
    report.env_value("n1", n1);
    report.env_value("n2", n2);
    report.env_value("states", n_states);
    report.env_value("expect_fail", cfg.expect_fail);

    let omega1 = params[0].level_spacing();
    let (o1, o2) = model.level_spacings();
    let scale = (n1 as f64 * o1).max(n2 as f64 * o2);
    let control_name =
        |n: (usize, usize)| format!("negative control (n1, n2) = ({}, {}): max r >= 0.1 Omega1", n.0, n.1);
    if cfg.expect_fail {
        for c in &result.report.checks {
            report.measure(format!("control: {}", c.name), c.residual);
        }
        for (name, v) in &result.report.measurements {
            report.measure(format!("control: {name}"), *v);
        }
        report.push_check(&Check::at_least(control_name((n1, n2)), result.max_residual, 0.1 * omega1));
    } else {
        report.push_check(&Check::at_most(
            "constraint mismatch |n1 Omega1 - n2 Omega2| (relative)",
            result.constraint.mismatch / scale,
            CONSTRAINT_TOLERANCE,
        ));
        report.absorb("", &result.report);
        if result.constraint.satisfied {
            let bad = TwoDimModel::new(params, ext, n1, n2 + 1).map_err(CliError::invalid)?;
            let control_sys = build_2d(&bad, &grids[0], &grids[1]).map_err(CliError::invalid)?;
            let control = verify_superintegrability(&control_sys, n_states.min(CONTROL_STATES), cfg.tol)
                .map_err(CliError::invalid)?;
            report.push_check(&Check::at_least(control_name((n1, n2 + 1)), control.max_residual, 0.1 * omega1));
        }
    }
    if let Some(w) = &result.witness {
        report.measure(format!("witness <({}, {}) | I- | ({}, {})>", w.to.0, w.to.1, w.from.0, w.from.1), w.magnitude);
    }

    let mut map = Table::new("degeneracy", &["energy", "degeneracy", "i", "j"]);
    for c in &result.clusters {
        for &(i, j) in &c.members {
            map.push(&[c.energy, c.members.len() as f64, i as f64, j as f64]);
        }
    }
    report.spectra.push(map);
    Ok(Outcome { stdout: report.render(cfg.format)?, pass: report.pass })
}
