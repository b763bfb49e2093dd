//! Lefschetz fixed-point invariants of finite simple graphs.
//!
//! Graphs are turned into clique complexes, cohomology is computed over the
//! rationals, and every invariant (Lefschetz numbers, fixed-simplex indices,
//! curvature, orbigraph Euler characteristics, zeta functions) is computed
//! exactly, usually along two independent routes so the results can be
//! checked against each other.

pub mod cohomology;
pub mod complex;
pub mod dynamics;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod linalg;
pub mod symmetry;
pub mod verify;
pub mod zeta;

pub use complex::{CliqueComplex, Simplex, SimplexId};
pub use dynamics::{GraphMap, MapKind, Topology};
pub use error::{Error, Result};
pub use graph::Graph;
