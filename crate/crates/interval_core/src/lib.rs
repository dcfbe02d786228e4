//! Rigorous interval arithmetic over the reals and complex numbers.
//!
//! Endpoints are rounded outward one operation at a time, so no global
//! rounding mode is touched and every value is safe to share across threads.

mod complex;
mod error;
pub mod hexfloat;
mod interval;
mod linalg;
mod matrix;
pub mod round;
mod scalar;
mod serde_impl;

pub use complex::{ComplexInterval, Cx};
pub use error::IntervalError;
pub use interval::{Interval, LIBM_SLACK_ULPS, PI};
pub use linalg::{
    complex_det_enclosure, det_enclosure, float_inverse, from_dmatrix, to_dmatrix, verify_invertible,
    InverseEnclosure, MAX_DET_SIZE,
};
pub use matrix::{
    mat_mul, mat_vec, norm_sup, norm_sup_matrix, ComplexIntervalMatrix, ComplexIntervalVector, IntervalMatrix,
    IntervalVector, Mat,
};
pub use scalar::{hypot_down, hypot_up, Ring, Scalar};
