//! Subgraph complementation to H-free graphs.
//!
//! Graph primitives, modular decomposition, tree families with hardness
//! certificates, CNF formulas and their lifts, SAT gadget constructions, and
//! exact solvers including the polynomial procedure for paw-free targets.

pub mod connectivity;
pub mod error;
pub mod hardness;
pub mod graph;
pub mod io;
pub mod iso;
pub mod modular;
pub mod reductions;
pub mod sat;
pub mod solvers;
pub mod trees;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{complement, disjoint_union, join, subgraph_complement, substitute, Graph, VertexSet};
