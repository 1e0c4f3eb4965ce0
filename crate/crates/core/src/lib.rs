//! Exact tropical intersection theory on tropical linear spaces and their
//! products and stars.

pub mod error;
pub mod exactmath;
pub mod functions;
pub mod intersect;
pub mod io;
pub mod linspace;
pub mod polyhedra;

pub use error::{Error, Result};
pub use exactmath::{IntMatrix, Integer, LatticeVector, Rational};
