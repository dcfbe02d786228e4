//! Z_m discrete reduction: rings of regular m-gons plus poles on the axis.

use interval_core::{Mat, Scalar};
use serde::{Deserialize, Serialize};

use crate::error::ModelError;
use crate::full::{min_distance, FullConfiguration, COLLISION_TOL, UNIT_TOL};
use crate::vec3::*;

/// Polygon order `m`, ring count `n` and pole count `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingShape {
    pub m: usize,
    pub n: usize,
    pub p: usize,
}

impl RingShape {
    pub fn new(m: usize, n: usize, p: usize) -> Result<RingShape, ModelError> {
        if m == 0 || n == 0 || p > 2 {
            return Err(ModelError::Invalid(format!("bad ring shape m={m} n={n} p={p}")));
        }
        Ok(RingShape { m, n, p })
    }

    /// Total vortex count `N = m n + p`.
    pub fn n_vortices(&self) -> usize {
        self.m * self.n + self.p
    }

    /// Number of unknowns `(u, lambda, alpha)` of the augmented map.
    pub fn n_unknowns(&self) -> usize {
        4 * self.n + 1
    }

    fn mi(&self) -> i64 {
        self.m as i64
    }

    /// `g_m^k`.
    pub fn g<S: Scalar>(&self, k: i64) -> M3<S> {
        rot(k, self.mi())
    }

    fn rotations<S: Scalar>(&self) -> Vec<M3<S>> {
        (0..=self.m as i64).map(|k| self.g(k)).collect()
    }

    /// North pole first, then South.
    pub fn poles<S: Scalar>(&self) -> Vec<V3<S>> {
        let (o, z) = (S::one(), S::zero());
        [[z, z, o], [z, z, -o]][..self.p].to_vec()
    }

    /// Offset `sigma_p` with `phi = Phi_3 o rho - sigma_p`.
    pub fn sigma(&self) -> f64 {
        if self.p == 1 {
            1.0
        } else {
            0.0
        }
    }

    /// Constant `C_p` with `H o rho = h + C_p` for the half-scale Hamiltonian.
    pub fn pole_pair_constant<S: Scalar>(&self) -> S {
        if self.p == 2 {
            -(S::from_f64(0.5) * S::from_f64(4.0).ln())
        } else {
            S::zero()
        }
    }

    /// `rho(u) = (g u_1, ..., g^m u_1, ..., g^m u_n, F_p)`.
    pub fn lift<S: Scalar>(&self, u: &[V3<S>]) -> Vec<V3<S>> {
        let rots = self.rotations::<S>();
        let mut out = Vec::with_capacity(self.n_vortices());
        for &uj in u {
            for g in &rots[1..] {
                out.push(mat_vec3(g, uj));
            }
        }
        out.extend(self.poles::<S>());
        out
    }

    /// Reduced Hamiltonian `h`.
    pub fn h<S: Scalar>(&self, u: &[V3<S>]) -> S {
        let rots = self.rotations::<S>();
        let m = S::from_int(self.mi());
        let quarter = m / S::from_f64(4.0);
        let half = m / S::from_f64(2.0);
        let poles = self.poles::<S>();
        let mut acc = S::zero();
        for j in 0..u.len() {
            for g in &rots[1..self.m] {
                acc = acc - quarter * norm_sqr(sub(mat_vec3(g, u[j]), u[j])).ln();
            }
            for jp in j + 1..u.len() {
                for g in &rots[1..] {
                    acc = acc - half * norm_sqr(sub(mat_vec3(g, u[j]), u[jp])).ln();
                }
            }
            for &f in &poles {
                acc = acc - half * norm_sqr(sub(u[j], f)).ln();
            }
        }
        acc
    }

    /// Reduced momentum `phi(u) = m (sum u_j) . e3`.
    pub fn phi<S: Scalar>(&self, u: &[V3<S>]) -> S {
        S::from_int(self.mi()) * u.iter().fold(S::zero(), |acc, x| acc + x[2])
    }

    /// `mu = Phi_3(rho(u))`.
    pub fn mu<S: Scalar>(&self, u: &[V3<S>]) -> S {
        self.phi(u) + S::from_f64(self.sigma())
    }

    /// Gradient of `h`, laid out as `3n` components.
    pub fn grad_h<S: Scalar>(&self, u: &[V3<S>]) -> Vec<S> {
        let rots = self.rotations::<S>();
        let m = S::from_int(self.mi());
        let poles = self.poles::<S>();
        let mut out = Vec::with_capacity(3 * u.len());
        for j in 0..u.len() {
            let mut acc = zero3();
            for g in &rots[1..self.m] {
                let d = sub(u[j], mat_vec3(g, u[j]));
                acc = add(acc, scale(S::one() / norm_sqr(d), d));
            }
            for jp in 0..u.len() {
                if jp == j {
                    continue;
                }
                for g in &rots[1..] {
                    let d = sub(u[j], mat_vec3(g, u[jp]));
                    acc = add(acc, scale(S::one() / norm_sqr(d), d));
                }
            }
            for &f in &poles {
                let d = sub(u[j], f);
                acc = add(acc, scale(S::one() / norm_sqr(d), d));
            }
            out.extend(scale(-m, acc));
        }
        out
    }

    /// Hessian of `h` (`3n x 3n`).
    pub fn hess_h<S: Scalar>(&self, u: &[V3<S>]) -> Mat<S> {
        let rots = self.rotations::<S>();
        let m = S::from_int(self.mi());
        let two = S::from_f64(2.0);
        let poles = self.poles::<S>();
        let id = ident::<S>();
        let n = u.len();
        let mut out = Mat::zeros(3 * n, 3 * n);
        // I/|d|^2 - 2 d d^T / |d|^4
        let kernel = |d: V3<S>| -> M3<S> {
            let r2 = norm_sqr(d);
            let r4 = r2.sqr();
            let dd = outer(d, d);
            let mut k = [[S::zero(); 3]; 3];
            for a in 0..3 {
                for b in 0..3 {
                    k[a][b] = id[a][b] / r2 - two * dd[a][b] / r4;
                }
            }
            k
        };
        for j in 0..n {
            let mut diag = [[S::zero(); 3]; 3];
            // Self-ring term: (I - g)/|d|^2 - 2 d d^T (I - g)/|d|^4.
            for g in &rots[1..self.m] {
                let d = sub(u[j], mat_vec3(g, u[j]));
                let r2 = norm_sqr(d);
                let r4 = r2.sqr();
                let img = mat_sub3(&id, g);
                let ddi = mat_mul3(&outer(d, d), &img);
                for a in 0..3 {
                    for b in 0..3 {
                        diag[a][b] = diag[a][b] + img[a][b] / r2 - two * ddi[a][b] / r4;
                    }
                }
            }
            for jp in 0..n {
                if jp == j {
                    continue;
                }
                let mut off = [[S::zero(); 3]; 3];
                for g in &rots[1..] {
                    let d = sub(u[j], mat_vec3(g, u[jp]));
                    let k = kernel(d);
                    let kg = mat_mul3(&k, g);
                    for a in 0..3 {
                        for b in 0..3 {
                            diag[a][b] = diag[a][b] + k[a][b];
                            off[a][b] = off[a][b] + kg[a][b];
                        }
                    }
                }
                for a in 0..3 {
                    for b in 0..3 {
                        out[(3 * j + a, 3 * jp + b)] = m * off[a][b];
                    }
                }
            }
            for &f in &poles {
                let k = kernel(sub(u[j], f));
                for a in 0..3 {
                    for b in 0..3 {
                        diag[a][b] = diag[a][b] + k[a][b];
                    }
                }
            }
            for a in 0..3 {
                for b in 0..3 {
                    out[(3 * j + a, 3 * j + b)] = -(m * diag[a][b]);
                }
            }
        }
        out
    }

    /// `h*_omega(u, lambda) = h - omega phi + m sum lambda_j (|u_j|^2 - 1)/2`.
    pub fn hstar<S: Scalar>(&self, u: &[V3<S>], lambda: &[S], omega: S) -> S {
        let m = S::from_int(self.mi());
        let half = S::from_f64(0.5);
        let mut acc = self.h(u) - omega * self.phi(u);
        for j in 0..u.len() {
            acc = acc + m * lambda[j] * half * (norm_sqr(u[j]) - S::one());
        }
        acc
    }

    /// Gradient of `h*_omega` in `(u, lambda)`: `3n + n` components.
    pub fn grad_hstar<S: Scalar>(&self, u: &[V3<S>], lambda: &[S], omega: S) -> Vec<S> {
        let m = S::from_int(self.mi());
        let half = S::from_f64(0.5);
        let mut g = self.grad_h(u);
        for j in 0..u.len() {
            for a in 0..3 {
                g[3 * j + a] = g[3 * j + a] + m * lambda[j] * u[j][a];
            }
            g[3 * j + 2] = g[3 * j + 2] - omega * m;
        }
        for j in 0..u.len() {
            g.push(m * half * (norm_sqr(u[j]) - S::one()));
        }
        g
    }

    /// `u`-block of the Hessian of `h*_omega`.
    pub fn hess_hstar_uu<S: Scalar>(&self, u: &[V3<S>], lambda: &[S]) -> Mat<S> {
        let m = S::from_int(self.mi());
        let mut h = self.hess_h(u);
        for j in 0..u.len() {
            for a in 0..3 {
                h[(3 * j + a, 3 * j + a)] = h[(3 * j + a, 3 * j + a)] + m * lambda[j];
            }
        }
        h
    }

    /// Multipliers making the gradient of `h*_omega` normal-free at unit `u`.
    pub fn multipliers<S: Scalar>(&self, u: &[V3<S>], omega: S) -> Vec<S> {
        let m = S::from_int(self.mi());
        let g = self.grad_h(u);
        (0..u.len())
            .map(|j| {
                let gj = [g[3 * j], g[3 * j + 1], g[3 * j + 2] - omega * m];
                -(dot(u[j], gj) / (m * norm_sqr(u[j])))
            })
            .collect()
    }

    /// Reduced equations `du_j/dt = -(1/m) u_j x grad_j h`.
    pub fn reduced_rhs<S: Scalar>(&self, u: &[V3<S>]) -> Vec<V3<S>> {
        let m = S::from_int(self.mi());
        let g = self.grad_h(u);
        (0..u.len())
            .map(|j| scale(-(S::one() / m), cross(u[j], [g[3 * j], g[3 * j + 1], g[3 * j + 2]])))
            .collect()
    }
}

/// A reduced configuration: ring shape plus one generator per ring.
#[derive(Clone, Debug, PartialEq)]
pub struct RingSystem {
    pub shape: RingShape,
    pub u: Vec<[f64; 3]>,
}

impl RingSystem {
    pub fn new(m: usize, n: usize, p: usize, u: Vec<[f64; 3]>) -> Result<RingSystem, ModelError> {
        let rs = RingSystem {
            shape: RingShape::new(m, n, p)?,
            u,
        };
        rs.validate()?;
        Ok(rs)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let s = self.shape;
        if self.u.len() != s.n {
            return Err(ModelError::Invalid(format!("{} generators for n={}", self.u.len(), s.n)));
        }
        for (j, v) in self.u.iter().enumerate() {
            let r = norm_sqr(*v).sqrt();
            if !((r - 1.0).abs() <= UNIT_TOL) {
                return Err(ModelError::Invalid(format!("generator {j} has norm {r}")));
            }
            if s.m >= 2 && (v[0] * v[0] + v[1] * v[1]).sqrt() < COLLISION_TOL {
                return Err(ModelError::Domain(format!("generator {j} sits on a pole")));
            }
        }
        let d = min_distance(&self.lift().vortices);
        if d < COLLISION_TOL {
            return Err(ModelError::Domain(format!("collision: minimal distance {d:e}")));
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.shape.m
    }

    pub fn n(&self) -> usize {
        self.shape.n
    }

    pub fn p(&self) -> usize {
        self.shape.p
    }

    pub fn n_vortices(&self) -> usize {
        self.shape.n_vortices()
    }

    pub fn z(&self, j: usize) -> f64 {
        self.u[j][2]
    }

    /// `eta_j = x_j - i y_j` as `(re, im)`.
    pub fn eta(&self, j: usize) -> (f64, f64) {
        (self.u[j][0], -self.u[j][1])
    }

    pub fn generators<S: Scalar>(&self) -> Vec<V3<S>> {
        self.u.iter().map(|&v| lift3(v)).collect()
    }

    pub fn lift(&self) -> FullConfiguration {
        FullConfiguration {
            vortices: self.shape.lift(&self.u),
        }
    }

    pub fn reduced_h(&self) -> Result<f64, ModelError> {
        self.validate()?;
        Ok(self.shape.h(&self.u))
    }

    pub fn reduced_phi(&self) -> f64 {
        self.shape.phi(&self.u)
    }

    pub fn grad_h(&self) -> Result<Vec<f64>, ModelError> {
        self.validate()?;
        Ok(self.shape.grad_h(&self.u))
    }

    pub fn hess_h(&self) -> Result<Mat<f64>, ModelError> {
        self.validate()?;
        Ok(self.shape.hess_h(&self.u))
    }

    /// Same shape, rotated generators `exp(theta J3) u_j`.
    pub fn rotated(&self, theta: f64) -> RingSystem {
        let (c, s) = (theta.cos(), theta.sin());
        RingSystem {
            shape: self.shape,
            u: self.u.iter().map(|v| [c * v[0] - s * v[1], s * v[0] + c * v[1], v[2]]).collect(),
        }
    }
}

pub fn lift_rho(u: &RingSystem) -> FullConfiguration {
    u.lift()
}
