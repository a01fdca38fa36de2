//! Exact rational linear algebra: matrices, canonical subspaces.

mod matrix;
mod subspace;

pub use matrix::{dot, AffineSolution, Mat};
pub use subspace::{orthogonal_to, Subspace};
