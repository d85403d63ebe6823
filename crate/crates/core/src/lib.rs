//! Exact mesh matrices of graphs relative to spanning trees.
//!
//! Given a connected multigraph `G` and a spanning tree `T₀`, each cotree
//! edge closes a fundamental cycle. The Gram matrix of those cycles is the
//! mesh matrix `Mesh(G, T₀) = Id + YᵗY`; its characteristic polynomial
//! counts spanning trees graded by how many cotree edges they use. This crate
//! computes these objects exactly, checks the identities relating them to
//! spanning-tree enumeration, Kirchhoff Laplacians, lattice indices and
//! eigenvalue bounds, and extends the forest sums to CW complexes given by
//! integer boundary matrices.

pub mod cli;
pub mod cone;
pub mod cw;
pub mod cycle;
pub mod error;
pub mod flux;
pub mod graph;
pub mod matrix;
pub mod mesh;
pub mod polynomial;
pub mod smith;
pub mod stpoly;
pub mod torsion;

pub use cycle::{MeshContext, OneChain};
pub use error::{Error, Result};
pub use graph::{Edge, EdgeId, EdgeSubset, Multigraph};
pub use matrix::{ExactMatrix, IntMatrix, RatMatrix};
pub use polynomial::{IntPolynomial, Polynomial, RatPolynomial};
