use swanson_core::susy::Seed;

use super::echo_common;
use crate::args::Format;
use crate::output::{table_csv, RunReport, Table};
use crate::{CliError, Outcome, RunConfig};

pub const DEFAULT_M: usize = 2;

/// Samples `z, V(z)` over the z-grid. `m = 0` gives the plain oscillator
/// `z^2`.
pub fn potential(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let m = cfg.m.unwrap_or(DEFAULT_M);
    let seed = Seed::new(m).map_err(CliError::invalid)?;
    let g = cfg.z_grid()?;
    let mut table = Table::new("partner potential", &["z", "V"]);
    for z in g.points() {
        let v = if m == 0 { z * z } else { seed.partner_potential(z) };
        table.push(&[z, v]);
    }
    let mut report = RunReport::new("potential");
    echo_common(&mut report, cfg);
    report.env_value("m", m);
    let note = (m == 0).then_some("m = 0: no seed, plain oscillator potential z^2");
    if let Some(n) = note {
        report.notes.push(n.into());
    }
    report.spectra.push(table);

    let stdout = match cfg.format {
        Format::Csv => {
            let body = table_csv(&report.spectra[0])?;
            match note {
                Some(n) => format!("# {n}\n{body}"),
                None => body,
            }
        }
        Format::Json => report.to_json()?,
    };
    Ok(Outcome { stdout, pass: true })
}
