use std::thread;

use swanson_core::susy::{
    build_operator_set, verify_factorization, verify_intertwining, verify_ladder_algebra, verify_pseudo_hermiticity,
};
use swanson_core::{ExtensionSpec, OperatorSet, ResidualReport};

use super::echo_common;
use crate::args::Suite;
use crate::output::RunReport;
use crate::{CliError, Outcome, RunConfig};

pub const DEFAULT_M: usize = 2;

/// Sorted by name, which is also the report order.
const ALL_SUITES: [Suite; 4] = [Suite::Intertwine, Suite::Ladder, Suite::Pseudo, Suite::Susy];

fn run_suite(s: Suite, os: &OperatorSet, tol: f64) -> Result<ResidualReport, CliError> {
    let r = match s {
        Suite::Intertwine => verify_intertwining(os, tol),
        Suite::Ladder => verify_ladder_algebra(os, tol),
        Suite::Pseudo => verify_pseudo_hermiticity(os, tol),
        Suite::Susy => verify_factorization(os, tol),
        Suite::All => unreachable!("expanded by the caller"),
    };
    r.map_err(CliError::invalid)
}

/// Runs the selected suites concurrently on one operator set and reports
/// them in suite-name order.
pub fn verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let m = cfg.m.unwrap_or(DEFAULT_M);
    let spec = ExtensionSpec::new(m).map_err(CliError::invalid)?;
    let g = cfg.x_grid(&cfg.params)?;
    let os = build_operator_set(&cfg.params, &spec, &g).map_err(CliError::invalid)?;
    let suites: Vec<Suite> = match cfg.suite {
        Suite::All => ALL_SUITES.to_vec(),
        s => vec![s],
    };

    let results: Vec<(Suite, Result<ResidualReport, CliError>)> = thread::scope(|scope| {
        let os = &os;
        let handles: Vec<_> = suites.iter().map(|&s| (s, scope.spawn(move || run_suite(s, os, cfg.tol)))).collect();
        handles
            .into_iter()
            .map(|(s, h)| {
                (s, h.join().unwrap_or_else(|_| Err(CliError::Invalid(format!("suite {} aborted", s.name())))))
            })
            .collect()
    });

    let mut report = RunReport::new("verify");
    echo_common(&mut report, cfg);
    report.env_value("m", m);
    report.env_value("suite", cfg.suite.name());
    for (s, r) in results {
        report.absorb(&format!("{}: ", s.name()), &r?);
    }
    Ok(Outcome { stdout: report.render(cfg.format)?, pass: report.pass })
}
