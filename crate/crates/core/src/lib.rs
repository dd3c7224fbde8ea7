//! Exact computation with Jacobi Novikov-Poisson algebras and the Jacobi
//! algebras they induce.
//!
//! Algebras are given by structure constants over the rationals or a prime
//! field. The crate checks the defining identities, builds the standard
//! constructions, and handles invariant forms, integrals and modules.

pub mod affine;
pub mod algebra;
pub mod catalog;
pub mod construct;
pub mod error;
pub mod frobenius;
pub mod io;
pub mod laws;
pub mod matrix;
pub mod representation;
pub mod scalar;
pub mod search;
pub mod vector;

pub use algebra::{tensor_index, Algebra, Orientation, StructureTensor, Which};
pub use error::{Error, Result};
pub use laws::{Counterexample, Verdict};
pub use matrix::Matrix;
pub use scalar::{Field, Scalar};
