//! Grid-based topology of torus subsets and the dynamics of torus
//! homeomorphisms: cell sets with holonomy, fill-in, circloid frontiers,
//! rotation estimates and a classifier for minimal sets.

pub mod circloid;
pub mod classify;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod fill;
pub mod grid;
pub mod homotopy;
pub mod lattice;
pub mod properties;

pub use error::{Error, Result};
