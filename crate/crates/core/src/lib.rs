//! Coherent configurations, two-dimensional Weisfeiler-Leman closure,
//! permutation groups at enumeration scale, Cartan schemes of `PGL(2,q)` and
//! its relatives, structural analysis, and recognition of Cartan schemes.

pub mod analysis;
pub mod cartan;
pub mod config;
pub mod graph;
pub mod perm;
pub mod profile;
pub mod recognition;
pub mod tensor;
pub mod wl;
pub mod zoo;

pub use config::{verify_coherence, CoherentConfiguration, Violation};
pub use graph::ColoredGraph;
pub use tensor::IntersectionTensor;
