//! One function per subcommand. Each returns the rendered output and the
//! verdict; invalid input is a [`CliError`](crate::CliError).

mod check;
mod potential;
mod spectrum;
mod twodim;
mod verify;

pub use check::check;
pub use potential::potential;
pub use spectrum::spectrum;
pub use twodim::twodim;
pub use verify::verify;

use swanson_core::ModelParams;

use crate::output::RunReport;
use crate::RunConfig;

fn echo_model(r: &mut RunReport, suffix: &str, p: &ModelParams) {
    r.env_number(&format!("omega{suffix}"), p.omega());
    r.env_number(&format!("alpha{suffix}"), p.alpha());
    r.env_number(&format!("beta{suffix}"), p.beta());
}

/// Grid, tolerance and first model, common to every command.
fn echo_common(r: &mut RunReport, cfg: &RunConfig) {
    echo_model(r, "", &cfg.params);
    r.env_number("grid_l", cfg.grid_l);
    r.env_value("grid_n", cfg.grid_n);
    r.env_number("tol", cfg.tol);
}
