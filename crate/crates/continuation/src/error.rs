use thiserror::Error;
use vortex_model::ModelError;

use crate::certificate::BranchCertificate;
use crate::nk::Diagnostics;

#[derive(Debug, Clone, Error)]
pub enum ContinuationError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("Newton iteration did not converge after {iterations} steps (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("not validated: {0}")]
    NotValidated(Diagnostics),
    #[error("branch stalled at omega = {omega} after {} certified segments", certificates.len())]
    BranchStalled {
        omega: f64,
        certificates: Vec<BranchCertificate>,
        last: Option<Diagnostics>,
    },
}
