//! Swanson oscillator toolkit: exact pseudo-Hermite polynomials, the
//! Hermitian-equivalent oscillator and its rational extension, a 2D
//! superintegrable composition, and a small operator language for checking
//! identities on finite-difference grids.

pub mod model;
pub mod numerics;
pub mod oplang;
pub mod poly;
pub mod report;
pub mod susy;
pub mod twodim;

pub use model::{derive_params, DerivedParams, ModelError, ModelParams};
pub use numerics::{Grid, NumericsError, OperatorMatrix, SpectralReport, WaveSample};
pub use oplang::{Expr, OplangError, ParseError};
pub use poly::Polynomial;
pub use report::{Check, ResidualReport};
pub use susy::{ExtensionSpec, OperatorSet, SusyError};
pub use twodim::{SuperintegrabilityReport, TwoDimError, TwoDimModel, TwoDimSystem};
