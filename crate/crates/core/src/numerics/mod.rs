//! Grids, banded matrix realizations of differential operators, Hermitian
//! eigensolves, quadrature and interior residual norms.

mod eigen;
mod grid;
mod operator;
mod quadrature;
mod residual;

use thiserror::Error;

pub use eigen::{
    sign_symmetric_tridiagonal_eigenvalues, symmetric_eigensolve, SpectralMetadata, SpectralReport,
    HERMITICITY_TOLERANCE,
};
pub use grid::Grid;
pub use operator::{
    add_scalar, commutator, conjugate_by_diagonal, d1_matrix, d2_matrix, dagger, diag_from_values, diag_matrix,
    diag_matrix_real, mat_add, mat_mul, mat_sub, scalar_mul, OperatorMatrix,
};
pub use quadrature::{trapezoid_weights, weighted_inner, NormConvention, WaveSample};
pub use residual::{hermite_functions, identity_residual, interior_norm, vector_identity_residual, ProbeSet};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid has {n_points} points, at least {minimum} required")]
    GridTooSmall { n_points: usize, minimum: usize },
    #[error("operands live on different grids ({left} vs {right})")]
    GridMismatch { left: String, right: String },
    #[error("expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite value at grid index {index}")]
    NonFinite { index: usize },
    #[error("non-positive conjugation entry at grid index {index}")]
    NonPositive { index: usize },
    #[error(
        "matrix is not Hermitian (relative deviation {deviation:.3e}); eigensolve its Hermitian \
         similarity partner and map back with conjugate_by_diagonal"
    )]
    NotHermitian { deviation: f64 },
    #[error("matrix is not tridiagonal (bandwidth {bandwidth:?})")]
    NotTridiagonal { bandwidth: (usize, usize) },
    #[error("tridiagonal matrix is not sign-symmetric at index {index}")]
    NotSignSymmetric { index: usize },
    #[error("{0}")]
    Degenerate(String),
}
