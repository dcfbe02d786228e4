//! Command-line pipeline: certification, continuation, stability verdicts,
//! energy-momentum diagrams and simulation.

mod args;
mod commands;
mod error;
mod input;
mod manifest;

pub use args::*;
pub use commands::{run, seed_from_env, Outcome, DIAGRAM_COLUMNS, SEED_VAR};
pub use error::CliError;
pub use input::{load, Input};
pub use manifest::{build_id, RunManifest, Stage};
