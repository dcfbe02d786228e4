//! Full-space quantities: Hamiltonian, momentum, equations of motion and the
//! Lagrange-multiplier Hessian.

use interval_core::{Mat, Scalar};
use serde::{Deserialize, Serialize};

use crate::error::ModelError;
use crate::vec3::*;

/// Pairs closer than this are treated as collisions.
pub const COLLISION_TOL: f64 = 1e-9;
/// Allowed deviation of `|v|` from 1 for float input.
pub const UNIT_TOL: f64 = 1e-8;

/// Prefactor `s` in `H = -s sum_{i<j} ln |v_i - v_j|^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum HamiltonianScale {
    /// `s = 1/2`: consistent with the explicit equations of motion.
    #[default]
    Half,
    /// `s = 1`.
    One,
}

impl HamiltonianScale {
    pub fn factor<S: Scalar>(self) -> S {
        match self {
            HamiltonianScale::Half => S::from_f64(0.5),
            HamiltonianScale::One => S::one(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
pub struct VortexParameters {
    /// Empty means all strengths equal to 1.
    pub strengths: Vec<f64>,
    pub scale: HamiltonianScale,
}

impl VortexParameters {
    pub fn strength(&self, i: usize) -> f64 {
        self.strengths.get(i).copied().unwrap_or(1.0)
    }

    pub fn validate(&self, n: usize) -> Result<(), ModelError> {
        if !self.strengths.is_empty() && self.strengths.len() != n {
            return Err(ModelError::Invalid(format!("{} strengths for {n} vortices", self.strengths.len())));
        }
        if self.strengths.iter().any(|&g| g == 0.0 || !g.is_finite()) {
            return Err(ModelError::Invalid("vortex strengths must be finite and nonzero".into()));
        }
        Ok(())
    }
}

/// Points on the unit sphere, ring-major with poles last.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FullConfiguration {
    pub vortices: Vec<[f64; 3]>,
}

impl FullConfiguration {
    pub fn new(vortices: Vec<[f64; 3]>) -> Result<Self, ModelError> {
        let c = FullConfiguration { vortices };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        for (j, v) in self.vortices.iter().enumerate() {
            let r = norm_sqr(*v).sqrt();
            if !((r - 1.0).abs() <= UNIT_TOL) {
                return Err(ModelError::Invalid(format!("vortex {j} has norm {r}")));
            }
        }
        let d = self.min_distance();
        if d < COLLISION_TOL {
            return Err(ModelError::Domain(format!("collision: minimal distance {d:e}")));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.vortices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vortices.is_empty()
    }

    pub fn min_distance(&self) -> f64 {
        min_distance(&self.vortices)
    }

    pub fn lifted<S: Scalar>(&self) -> Vec<V3<S>> {
        self.vortices.iter().map(|&v| lift3(v)).collect()
    }
}

pub fn min_distance(v: &[[f64; 3]]) -> f64 {
    let mut d = f64::INFINITY;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            d = d.min(norm_sqr(sub(v[i], v[j])).sqrt());
        }
    }
    d
}

pub fn hamiltonian<S: Scalar>(v: &[V3<S>], scale: HamiltonianScale) -> S {
    let mut acc = S::zero();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            acc = acc + norm_sqr(sub(v[i], v[j])).ln();
        }
    }
    -(scale.factor::<S>() * acc)
}

pub fn momentum<S: Scalar>(v: &[V3<S>]) -> V3<S> {
    v.iter().fold(zero3(), |acc, &x| add(acc, x))
}

/// `H - omega Phi_3`.
pub fn augmented_hamiltonian<S: Scalar>(v: &[V3<S>], omega: S, scale: HamiltonianScale) -> S {
    hamiltonian(v, scale) - omega * momentum(v)[2]
}

/// `dv_j/dt = sum_{i != j} Gamma_i (v_i x v_j) / |v_i - v_j|^2`.
pub fn rhs<S: Scalar>(v: &[V3<S>], params: &VortexParameters) -> Vec<V3<S>> {
    (0..v.len())
        .map(|j| {
            let mut acc = zero3();
            for i in 0..v.len() {
                if i == j {
                    continue;
                }
                let d2 = norm_sqr(sub(v[i], v[j]));
                let g = S::from_f64(params.strength(i));
                acc = add(acc, scale(g / d2, cross(v[i], v[j])));
            }
            acc
        })
        .collect()
}

/// Gradient of `H_omega` in the ambient space.
pub fn grad_augmented<S: Scalar>(v: &[V3<S>], omega: S, scale_h: HamiltonianScale) -> Vec<V3<S>> {
    let two_s = scale_h.factor::<S>() * S::from_f64(2.0);
    (0..v.len())
        .map(|j| {
            let mut acc = zero3();
            for i in 0..v.len() {
                if i != j {
                    let d = sub(v[j], v[i]);
                    acc = sub(acc, scale(two_s / norm_sqr(d), d));
                }
            }
            acc[2] = acc[2] - omega;
            acc
        })
        .collect()
}

/// Hessian of `H*_omega = H_omega + sum c_j (1 - |x_j|^2)/2` at `v`, with
/// multipliers `c_j = v_j . grad_j H_omega`.
#[derive(Clone, Debug)]
pub struct HStarHessian<S> {
    pub hessian: Mat<S>,
    pub multipliers: Vec<S>,
    /// Largest tangential gradient component (midpoint); large means `v`
    /// is not a critical point of `H_omega` on the sphere.
    pub residual: f64,
}

impl<S> HStarHessian<S> {
    pub fn is_critical(&self, tol: f64) -> bool {
        self.residual <= tol
    }
}

pub fn full_hstar_hessian<S: Scalar>(v: &[V3<S>], omega: S, scale_h: HamiltonianScale) -> HStarHessian<S> {
    let n = v.len();
    let two_s = scale_h.factor::<S>() * S::from_f64(2.0);
    let grad = grad_augmented(v, omega, scale_h);
    let multipliers: Vec<S> = (0..n).map(|j| dot(v[j], grad[j])).collect();
    let mut residual = 0.0f64;
    for j in 0..n {
        let t = sub(grad[j], scale(multipliers[j], v[j]));
        residual = residual.max(t.iter().map(|x| x.mid().abs()).fold(0.0, f64::max));
    }
    let mut h = Mat::zeros(3 * n, 3 * n);
    let two = S::from_f64(2.0);
    for i in 0..n {
        for j in i + 1..n {
            let d = sub(v[i], v[j]);
            let r2 = norm_sqr(d);
            let r4 = r2.sqr();
            for a in 0..3 {
                for b in 0..3 {
                    let id = if a == b { S::one() / r2 } else { S::zero() };
                    let blk = two_s * (id - two * d[a] * d[b] / r4);
                    h[(3 * i + a, 3 * j + b)] = blk;
                    h[(3 * j + a, 3 * i + b)] = blk;
                    h[(3 * i + a, 3 * i + b)] = h[(3 * i + a, 3 * i + b)] - blk;
                    h[(3 * j + a, 3 * j + b)] = h[(3 * j + a, 3 * j + b)] - blk;
                }
            }
        }
    }
    for j in 0..n {
        for a in 0..3 {
            h[(3 * j + a, 3 * j + a)] = h[(3 * j + a, 3 * j + a)] - multipliers[j];
        }
    }
    HStarHessian {
        hessian: h,
        multipliers,
        residual,
    }
}

pub fn hamiltonian_h(v: &FullConfiguration, params: &VortexParameters) -> Result<f64, ModelError> {
    v.validate()?;
    Ok(hamiltonian(&v.vortices, params.scale))
}

pub fn momentum_phi(v: &FullConfiguration) -> [f64; 3] {
    momentum(&v.vortices)
}

pub fn augmented_h(v: &FullConfiguration, omega: f64, params: &VortexParameters) -> Result<f64, ModelError> {
    v.validate()?;
    Ok(augmented_hamiltonian(&v.vortices, omega, params.scale))
}

pub fn vortex_rhs(v: &FullConfiguration, params: &VortexParameters) -> Result<Vec<[f64; 3]>, ModelError> {
    v.validate()?;
    params.validate(v.len())?;
    Ok(rhs(&v.vortices, params))
}
