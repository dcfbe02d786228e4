//! Unknowns `(u, lambda, alpha)` of the augmented map plus the parameter `omega`.

use serde::{Deserialize, Serialize};
use vortex_model::{RingShape, RingSystem};

use crate::error::ContinuationError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AugmentedPoint {
    pub u: Vec<[f64; 3]>,
    pub lambda: Vec<f64>,
    pub alpha: f64,
    pub omega: f64,
}

impl AugmentedPoint {
    /// `alpha = 0` and multipliers solved from the normal part of the gradient.
    pub fn from_rings(rs: &RingSystem, omega: f64) -> AugmentedPoint {
        AugmentedPoint {
            lambda: rs.shape.multipliers(&rs.u, omega),
            u: rs.u.clone(),
            alpha: 0.0,
            omega,
        }
    }

    /// Flat layout `(u_1, ..., u_n, lambda_1, ..., lambda_n, alpha)`.
    pub fn to_vec(&self) -> Vec<f64> {
        let mut x: Vec<f64> = self.u.iter().flatten().copied().collect();
        x.extend(&self.lambda);
        x.push(self.alpha);
        x
    }

    pub fn from_vec(x: &[f64], omega: f64) -> Result<AugmentedPoint, ContinuationError> {
        if x.len() % 4 != 1 {
            return Err(ContinuationError::Shape(format!("vector of length {} is not 4n+1", x.len())));
        }
        let n = x.len() / 4;
        Ok(AugmentedPoint {
            u: (0..n).map(|j| [x[3 * j], x[3 * j + 1], x[3 * j + 2]]).collect(),
            lambda: x[3 * n..4 * n].to_vec(),
            alpha: x[4 * n],
            omega,
        })
    }

    pub fn n(&self) -> usize {
        self.u.len()
    }

    pub fn rings(&self, shape: RingShape) -> Result<RingSystem, ContinuationError> {
        Ok(RingSystem::new(shape.m, shape.n, shape.p, self.u.clone())?)
    }

    /// `mu = Phi_3(rho(u))`.
    pub fn mu(&self, shape: RingShape) -> f64 {
        shape.mu(&self.u)
    }

    pub fn check(&self, shape: RingShape) -> Result<(), ContinuationError> {
        if self.u.len() != shape.n || self.lambda.len() != shape.n {
            return Err(ContinuationError::Shape(format!(
                "point with {} generators and {} multipliers for n={}",
                self.u.len(),
                self.lambda.len(),
                shape.n
            )));
        }
        Ok(())
    }
}
