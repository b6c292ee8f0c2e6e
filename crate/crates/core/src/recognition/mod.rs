//! Isomorphisms of coherent configurations by individualization and
//! refinement, algebraic isomorphisms, and recognition of Cartan schemes.

mod algebraic;
mod iso;
mod pipeline;

pub use algebraic::*;
pub use iso::*;
pub use pipeline::*;

use thiserror::Error;

use crate::perm::GroupError;
use crate::wl::WlError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecognitionError {
    #[error("budget exceeded at {stage}: {detail}")]
    Budget { stage: String, detail: String },
    #[error("not an algebraic isomorphism: {0}")]
    NotAlgebraicIsomorphism(String),
    #[error("configurations have {0} and {1} points")]
    PointMismatch(usize, usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Wl(#[from] WlError),
}
