//! Exact linear algebra over the rationals and prime fields.
//!
//! Every rank, kernel, image and quotient computed elsewhere in the crate goes
//! through this module. There is no floating point anywhere.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{Echelon, Matrix, Vector};
pub use scalar::{Field, Scalar};
pub use subspace::{induced_on_quotient, quotient_map, Subspace};

pub(crate) use subspace::QuotientData;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    OutOfBounds { row: usize, col: usize, rows: usize, cols: usize },
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("map does not carry the source subspace into the target subspace")]
    NotInvariant,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("unrecognised field '{0}', expected 'q' or 'fp:<prime>'")]
    BadField(String),
}

/// Rank of `m` over its field.
pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

/// Basis of `{v : m v = 0}`.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    Subspace::kernel(m)
}

/// Any `x` with `m x = b`, or `None` when `b` is not in the image of `m`.
pub fn solve_in_image(m: &Matrix, b: &[Scalar]) -> Result<Option<Vector>, LinAlgError> {
    m.solve(b)
}
