//! Verification toolkit for spectral extremal problems on planar graphs that
//! avoid `C_{l,l}` (two `l`-cycles sharing a vertex) or Theta graphs.
//!
//! The crate builds the candidate extremal families `K2 + H` and `K_{2,n-2}`,
//! decides pattern-freeness both by closed-form path-partition predicates and
//! by subgraph search, computes certified spectral radii, and runs small
//! exhaustive and family-wide searches for the maximiser.

pub mod canonical;
pub mod charpoly;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod patterns;
pub mod planarity;
pub mod search;
pub mod sig15;
pub mod spectral;

pub use constructions::PathPartition;
pub use error::{Result, SpexError};
pub use graph::Graph;
pub use patterns::ForbiddenPattern;
pub use spectral::{RhoOrdering, SpectralResult};
