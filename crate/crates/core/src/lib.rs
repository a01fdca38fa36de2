//! Exact-arithmetic stoichiometry workbench.
//!
//! Everything here runs over exact rationals: chemical formula parsing,
//! nullspace-based balancing, convex polytope geometry for reaction
//! families, redox/half-reaction analysis, lattice-point counting, and
//! forward/inverse reaction-mechanism analysis.

pub mod error;
pub mod rat;
pub mod linalg;
pub mod lp;
pub mod balance;
pub mod formula;
pub mod geometry;
pub mod lattice;
pub mod mechanism;
pub mod redox;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
