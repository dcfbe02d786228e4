use continuation::ContinuationError;
use interval_core::IntervalError;
use thiserror::Error;
use vortex_model::ModelError;

#[derive(Debug, Error)]
pub enum StabilityError {
    #[error("slice construction failed: {0}")]
    SliceConstruction(String),
    #[error("eigenpair near {lambda} is not isolated (Z = {z})")]
    NotIsolated { lambda: f64, z: f64 },
    #[error("determinant enclosure meets zero on the boundary of the window {center} +- {half_width}")]
    BoundaryHit { center: f64, half_width: f64 },
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Continuation(#[from] ContinuationError),
}
