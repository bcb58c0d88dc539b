//! Finite simplicial complexes and the combinatorial tools around covers,
//! nerves, derived neighborhoods and deleted products.
//!
//! Vertex labels are strings. Faces of iterated barycentric subdivisions
//! are labelled by nested bracket lists, so `[[1],[1,2]]` is the vertex of
//! `sd sd K` standing for the chain `{1} ⊂ {1,2}`.

pub mod complex;
pub mod constructions;
pub mod corpus;
pub mod covers;
pub mod deleted_product;
pub mod error;
pub mod homology;
pub mod io;
pub mod iso;
pub mod label;
pub mod neighborhoods;
pub mod product;
pub mod subdivision;
pub mod verify;

pub use complex::{Simplex, SimplicialComplex, Vertex};
pub use error::{Error, Result};
