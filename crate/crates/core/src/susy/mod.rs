//! The 1-step rational extension: pseudo-Hermite seeds, superpotential and
//! partner potential, the ladder and supercharge operators on a grid, and
//! residual checks of the identities relating them.

mod operators;
mod seed;
mod verify;

use thiserror::Error;

use crate::model::ModelError;
use crate::numerics::NumericsError;

pub use operators::{build_operator_set, OperatorSet, PROBE_COUNT};
pub use seed::{
    extended_spectrum, oscillator_spectrum, partner_potential_tilde, seed_sample, superpotential_tilde,
    unextended_partner_spectrum, ExtensionSpec, Seed, SeedSample,
};
pub use verify::{
    eta_deviation, expanded_form_offsets, intertwining_on_states, refinement_pair, verify_factorization,
    verify_intertwining, verify_ladder_algebra, verify_pseudo_hermiticity, ExpandedFormOffsets, ANNIHILATION_TOLERANCE,
    GRAM_TOLERANCE, LADDER_OVERLAP,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SusyError {
    #[error("invalid seed index m = {m}: {reason}")]
    InvalidSeed { m: usize, reason: &'static str },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}
