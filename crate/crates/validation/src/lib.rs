//! Thresholds of the acceptance run in `tests/acceptance.rs`.
//!
//! Every criterion is evaluated at the default grid (`L = 10`, 2001 points
//! in `z`). Refined-grid numbers are printed as information only and never
//! change a verdict.

/// Relative error of the low-lying eigenvalues.
pub const SPECTRUM_REL_TOL: f64 = 1e-4;
/// Levels checked in the baseline and Swanson spectra.
pub const SPECTRUM_LEVELS: usize = 8;
/// Error ratio on halving the spacing for a second-order scheme.
pub const CONVERGENCE_RATIO: (f64, f64) = (3.0, 5.0);
/// Eigenvalues of `h` against its diagonal conjugate.
pub const ISOSPECTRAL_TOL: f64 = 1e-10;
/// Extended levels; absolute for the seed level, relative otherwise.
pub const EXTENDED_TOL: f64 = 1e-4;
/// Levels of the extended spectrum checked.
pub const EXTENDED_LEVELS: usize = 6;
/// Shooting oracle against the closed-form extended levels.
pub const SHOOTING_TOL: f64 = 1e-6;
/// Interior relative residual of the operator identities.
pub const IDENTITY_TOL: f64 = 1e-4;
/// Minimum overlap of `K v_j` with the neighbouring level.
pub const LADDER_OVERLAP: f64 = 0.9999;
/// `eta H - H' eta` for conjugation-built `H`.
pub const CONJUGATION_TOL: f64 = 1e-12;
/// Weighted Gram matrix of `psi_0..psi_7`.
pub const GRAM_TOL: f64 = 1e-6;
/// Product states examined in 2D.
pub const PRODUCT_STATES: usize = 100;
/// Commutator action of the plain 2D integrals.
pub const PLAIN_2D_TOL: f64 = 1e-5;
/// Commutator action of the extended 2D integrals.
pub const EXTENDED_2D_TOL: f64 = 1e-4;
/// Negative control must reach this multiple of `Omega_1`.
pub const CONTROL_FACTOR: f64 = 0.1;
/// Exact coefficients are compared through this degree.
pub const POLY_DEGREE: usize = 40;
/// Sturm nodelessness verdicts are compared through this degree.
pub const STURM_DEGREE: usize = 20;
/// Random inputs fed to the parser.
pub const FUZZ_CASES: usize = 10_000;
