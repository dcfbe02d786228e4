//! Floating-point Newton corrector for the augmented map.

use interval_core::to_dmatrix;
use nalgebra::DVector;
use vortex_model::RingShape;

use crate::error::ContinuationError;
use crate::map::{augmented_map, jacobian};
use crate::point::AugmentedPoint;

pub const NEWTON_MAX_ITER: usize = 50;
/// Target residual.
pub const NEWTON_TOL: f64 = 1e-13;
/// Residual accepted once the steps have stalled at rounding level.
pub const NEWTON_STALL_TOL: f64 = 1e-9;

fn sup(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |a: f64, x| if a.is_nan() || x.is_nan() { f64::NAN } else { a.max(x.abs()) })
}

pub fn residual(shape: RingShape, x: &AugmentedPoint, anchor: &[[f64; 3]]) -> f64 {
    sup(&augmented_map(shape, &x.to_vec(), x.omega, anchor))
}

/// Newton iteration on `F(., omega) = 0` with the section anchored at `anchor`.
pub fn newton_polish(
    shape: RingShape,
    x0: &AugmentedPoint,
    anchor: &[[f64; 3]],
    omega: f64,
) -> Result<AugmentedPoint, ContinuationError> {
    x0.check(shape)?;
    if anchor.len() != shape.n {
        return Err(ContinuationError::Shape(format!("{} anchor vectors for n={}", anchor.len(), shape.n)));
    }
    let mut x = x0.to_vec();
    let mut f = augmented_map(shape, &x, omega, anchor);
    let mut res = sup(&f);
    let start = res;
    for it in 0..NEWTON_MAX_ITER {
        if !res.is_finite() || res > 1e8 * (1.0 + start) {
            return Err(ContinuationError::NoConvergence { iterations: it, residual: res });
        }
        if res <= NEWTON_TOL {
            return AugmentedPoint::from_vec(&x, omega);
        }
        let j = to_dmatrix(&jacobian(shape, &x, anchor));
        let rhs = DVector::from_iterator(f.len(), f.iter().map(|v| -v));
        let dx = match j.lu().solve(&rhs) {
            Some(dx) => dx,
            None => return Err(ContinuationError::NoConvergence { iterations: it, residual: res }),
        };
        for (xi, di) in x.iter_mut().zip(dx.iter()) {
            *xi += di;
        }
        let step = dx.amax();
        f = augmented_map(shape, &x, omega, anchor);
        let next = sup(&f);
        let scale = 1.0 + sup(&x);
        if next <= NEWTON_STALL_TOL && step <= 64.0 * f64::EPSILON * scale {
            return AugmentedPoint::from_vec(&x, omega);
        }
        res = next;
    }
    if res <= NEWTON_STALL_TOL {
        return AugmentedPoint::from_vec(&x, omega);
    }
    Err(ContinuationError::NoConvergence { iterations: NEWTON_MAX_ITER, residual: res })
}
