pub mod dynamics;
pub mod energy;
pub mod error;
pub mod model;
pub mod output;
pub mod runner;
pub mod scalar;
pub mod solution;
pub mod symmetry;
pub mod taylor;

pub use error::{Error, Result};
