pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod cohomology;
pub mod degeneration;
pub mod error;
pub mod identity;
pub mod invariants;
pub mod linalg;
mod rng;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
