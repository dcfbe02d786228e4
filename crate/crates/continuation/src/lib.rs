//! Certified continuation of Z_m-symmetric relative equilibria as zeros of
//! the augmented map `F(u, lambda, alpha; omega)`.

mod branch;
mod certificate;
mod error;
mod map;
mod newton;
mod nk;
mod point;

pub use branch::{certify_segment, continue_branch, continue_from_points, seed_point, track, StepPolicy};
pub use certificate::{chain_from_json, chain_to_json, BranchCertificate, Provenance};
pub use error::ContinuationError;
pub use map::{augmented_map, jacobian, omega_derivative};
pub use newton::{newton_polish, residual, NEWTON_MAX_ITER, NEWTON_STALL_TOL, NEWTON_TOL};
pub use nk::{nk_validate_point, nk_validate_segment, radii_root, Diagnostics, NKBounds, NKOptions, PointValidation, NORM_ID};
pub use point::AugmentedPoint;
