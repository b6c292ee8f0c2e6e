//! Structural analysis of homogeneous coherent configurations and the
//! class-size bounds for groups of Lie type.

mod bounds;
mod structure;

pub use bounds::*;
pub use structure::*;

use thiserror::Error;

use crate::wl::WlError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("configuration is not homogeneous ({fibers} fibers)")]
    NotHomogeneous { fibers: usize },
    #[error("point {point} is out of range for {n} points")]
    PointOutOfRange { point: usize, n: usize },
    #[error("relation {0} does not have maximal valency")]
    NotInSmax(u32),
    #[error("{what}: direct count {direct} differs from formula {formula}")]
    OracleMismatch { what: String, direct: u64, formula: u64 },
    #[error("m = {0} is not supported (1 or 2)")]
    UnsupportedM(usize),
    #[error(transparent)]
    Wl(#[from] WlError),
}
