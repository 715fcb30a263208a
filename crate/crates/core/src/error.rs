use thiserror::Error;

use crate::exactla::LinAlgError;
use crate::precubical::PrecubicalError;

/// Errors raised above the linear-algebra and precubical layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Precubical(#[from] PrecubicalError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("the boundary of a 0-dimensional chain is not defined")]
    ZeroDimensionalBoundary,
    #[error("boundary squared is nonzero in degree {degree} at ({src}, {dst})")]
    BoundaryNotNilpotent { degree: usize, src: String, dst: String },
    #[error("unknown vertex '{0}'")]
    UnknownVertex(String),
    #[error("degree {degree} exceeds the computed range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("{0} is not a chain map")]
    NotAChainMap(String),
    #[error("action of edge '{0}' is not well defined on homology")]
    IllDefinedAction(String),
    #[error("the maps do not form a short exact sequence: {0}")]
    NotShortExact(String),
    #[error("morphism is not an inclusion")]
    NotInclusion,
    #[error("bimodules are over different algebras")]
    AlgebraMismatch,
    #[error("the two subsets do not cover the set: '{0}' is missing")]
    NotACover(String),
    #[error("chain is not a chain of the tensor product: {0}")]
    NotATensorChain(String),
    #[error("no swappable pattern at position {0}")]
    BadSwap(usize),
    #[error("expected a chain of dimension {expected}, got {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("a theorem-guaranteed identity failed: {0}")]
    Assertion(String),
}

impl Error {
    /// Failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::BoundaryNotNilpotent { .. }
                | Error::NotAChainMap(_)
                | Error::IllDefinedAction(_)
                | Error::Assertion(_)
        )
    }
}
