pub mod betti;
pub mod divisorial;
pub mod error;
pub mod exactlin;
pub mod exec;
pub mod fan;
pub mod hpoly;
pub mod polyhedron;

pub use error::{Error, ErrorCategory, Result};
