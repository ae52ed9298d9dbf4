//! Exact computations on cyclic and well-rounded lattices.
//!
//! Everything is done in exact arithmetic over the rationals or a real
//! quadratic field; floating point is only used to steer enumeration, and
//! every candidate it produces is re-checked exactly.

pub mod cli;
pub mod cyclic;
pub mod document;
pub mod enumerate;
pub mod error;
pub mod heights;
pub mod interval;
pub mod lattice;
pub mod matrix;
pub mod numberfield;
pub mod planar;
pub mod poly;
pub mod roots;
pub mod scalar;

pub use enumerate::{MinimalVectorSet, ShortVector};
pub use error::{Error, Result};
pub use lattice::{GramMatrix, Lattice, WrFlags};
pub use matrix::{hnf, ExactMatrix, Hnf, IntMatrix};
pub use scalar::Scalar;
