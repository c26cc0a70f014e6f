use swanson_core::report::Check;
use swanson_core::susy::{extended_spectrum, oscillator_spectrum};
use swanson_core::ExtensionSpec;

use super::echo_common;
use crate::args::Format;
use crate::output::{table_csv, RunReport, Table};
use crate::{CliError, Outcome, RunConfig};

pub const DEFAULT_LEVELS: usize = 8;
pub const MAX_LEVELS: usize = 200;

/// Eigenvalues `eps` of `-d^2/dz^2 + V` reported as `omega/2 + eps Omega/2`,
/// where `V` is `z^2` or, with `m >= 2`, the extended partner potential.
pub fn spectrum(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let levels = cfg.levels.unwrap_or(DEFAULT_LEVELS);
    if levels > MAX_LEVELS {
        return Err(CliError::Invalid(format!("levels must be at most {MAX_LEVELS}, got {levels}")));
    }
    let g = cfg.z_grid()?;
    let p = &cfg.params;
    let (eps, exact): (Vec<f64>, Vec<f64>) = match cfg.m {
        None | Some(0) => {
            let r = oscillator_spectrum(&g, levels).map_err(CliError::invalid)?;
            (r.eigenvalues, (0..levels).map(|n| 2.0 * n as f64 + 1.0).collect())
        }
        Some(m) => {
            let s = ExtensionSpec::new(m).map_err(CliError::invalid)?;
            let r = extended_spectrum(p, &s, &g, levels).map_err(CliError::invalid)?;
            let exact = (0..levels).map(|n| if n == 0 { s.e_tilde() } else { 2.0 * n as f64 - 1.0 }).collect();
            (r.eigenvalues, exact)
        }
    };

    let (half, spacing) = (0.5 * p.omega(), p.level_spacing());
    let mut report = RunReport::new("spectrum");
    echo_common(&mut report, cfg);
    report.env_value("levels", levels);
    if let Some(m) = cfg.m {
        report.env_value("m", m);
    }
    let mut table = Table::new("spectrum", &["n", "E_numeric", "E_exact", "abs_err", "rel_err"]);
    for (n, (e, x)) in eps.iter().zip(&exact).enumerate() {
        let numeric = half + 0.5 * spacing * e;
        let exact = half + 0.5 * spacing * x;
        let abs_err = (numeric - exact).abs();
        let rel_err = if exact != 0.0 { abs_err / exact.abs() } else { abs_err };
        table.push(&[n as f64, numeric, exact, abs_err, rel_err]);
        report.push_check(&Check::at_most(format!("level {n} relative error"), rel_err, cfg.tol));
    }
    report.spectra.push(table);

    let stdout = match cfg.format {
        Format::Csv => table_csv(&report.spectra[0])?,
        Format::Json => report.to_json()?,
    };
    Ok(Outcome { stdout, pass: report.pass })
}
