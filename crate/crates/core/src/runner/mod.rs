//! Configuration and the five verification / generation commands behind
//! the `stratsym` binary.

mod commands;
mod config;

pub use commands::{exit_code, run, Command, CommandOutcome, Criterion, Status};
pub use config::{EnergyConfig, ReducedConfig, RunConfig, SolutionConfig, SymmetryConfig, TimeConfig, Tolerances};
