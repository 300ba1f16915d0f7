//! Combinatorial polytope toolkit.
//!
//! Builds face lattices from facet–vertex incidences, extracts vertex–edge
//! and dual graphs, enumerates acyclic orientations, and reconstructs face
//! lattices from a graph plus edge-labeled vertex figures. Simple polytopes
//! reconstruct from the graph alone; capped cubical polytopes reconstruct
//! from their dual graph alone. Everything works on exact integer
//! combinatorics — no coordinates, no floating point.

pub mod cubical;
pub mod error;
pub mod files;
pub mod generate;
pub mod graph;
pub mod labels;
pub mod lattice;
pub mod orient;
pub mod reconstruct;

pub use error::{Error, Result};
pub use lattice::{FaceLattice, PolytopeSpec};
