pub mod cli;
pub mod cubechain;
pub mod ez;
pub mod error;
pub mod exactla;
pub mod exactseq;
pub mod graded;
pub mod homology;
pub mod precubical;
pub mod scalars;

pub use error::Error;
