//! Fixtures: ground states, near-collision relative equilibria, analytic
//! one-ring branches and their stability thresholds.

pub mod closed;
mod families;
mod fixtures;
pub mod orient;

use thiserror::Error;
use vortex_model::ModelError;

pub use families::{one_ring_family, threshold, OneRing, StableSide, Threshold};
pub use fixtures::{all_fixtures, fixture, FixtureEntry, NAMES};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("not found: {0}")]
    NotFound(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}
