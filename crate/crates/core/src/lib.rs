//! Exact cohomology computations for twistor spaces of 4- and 6-manifolds
//! and for the space of almost complex structures.

pub mod algebra;
pub mod error;
pub mod homotopy;
pub mod intersect;
pub mod manifold;
pub mod twistor;

pub use error::{Error, ErrorCode, Result};
