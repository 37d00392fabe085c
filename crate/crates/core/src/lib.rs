//! Fox colorings of knot and link diagrams.

pub mod analysis;
pub mod coloring;
pub mod diagram;
mod error;
pub mod modular;
pub mod moves;
pub mod verify;

pub use error::{Error, Result};
