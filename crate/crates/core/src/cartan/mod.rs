//! Rank-one matrix groups over small fields, their Cartan schemes, and the
//! order formulas of the groups of Lie type.

mod bundle;
mod field;
mod lie;
mod matrix;

pub use bundle::*;
pub use field::*;
pub use lie::*;
pub use matrix::*;
