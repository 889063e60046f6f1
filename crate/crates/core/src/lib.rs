//! Motion planning for discrete reconfigurable systems whose state complexes
//! are CAT(0) cube complexes, via posets with inconsistent pairs.

mod bitset;
mod error;

pub mod arms;
pub mod complex;
pub mod pip;
pub mod planner;
pub mod reconfig;

pub use bitset::ElementSet;
pub use complex::CubeComplex;
pub use error::{Error, Result};
pub use pip::{Ideal, Pip};
pub use reconfig::{Generator, RState, ReconfigSystem};
