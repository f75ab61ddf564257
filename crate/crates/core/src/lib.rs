//! 3-torsion points on Jacobians of genus-3 hyperelliptic curves.

pub mod arith;
pub mod catalog;
pub mod conductor;
pub mod error;
pub mod io;
pub mod pipeline;
pub mod scheme;
pub mod recon;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
