//! Filtered simplicial complexes, nerves of filtered covers and persistent
//! homology, together with exact chain-level checks showing that persistent
//! homology of a filtered good cover agrees with that of its nerve.

pub mod campaign;
pub mod chain;
pub mod complex;
pub mod error;
pub mod filtration;
pub mod generator;
pub mod geometry;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod nervemap;
pub mod order;
pub mod persistence;
pub mod ring;
pub mod simplex;

pub use chain::{boundary, boundary_chain, Chain};
pub use complex::{make_complex, SimplicialComplex};
pub use error::{Error, Result};
pub use ring::Ring;
pub use simplex::{OrderedSimplex, Simplex, Vertex};
