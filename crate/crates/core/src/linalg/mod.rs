//! Exact dense linear algebra over the rationals.

mod matrix;
mod subspace;

pub use matrix::{Mat, Rref};
pub use subspace::Subspace;
