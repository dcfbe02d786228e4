//! The augmented map `F(u, lambda, alpha; omega)` and its derivatives.
//!
//! `F = (grad_u h*_omega + alpha J3 u, m R_1, ..., m R_n, J3 b . (u - b))`
//! with `R_j = (|u_j|^2 - 1)/2` and `b` the section anchor.

use interval_core::{Mat, Scalar};
use vortex_model::vec3::{j3, lift3, V3};
use vortex_model::RingShape;

fn split<S: Scalar>(n: usize, x: &[S]) -> (Vec<V3<S>>, Vec<S>, S) {
    let u = (0..n).map(|j| [x[3 * j], x[3 * j + 1], x[3 * j + 2]]).collect();
    (u, x[3 * n..4 * n].to_vec(), x[4 * n])
}

pub fn augmented_map<S: Scalar>(shape: RingShape, x: &[S], omega: S, anchor: &[[f64; 3]]) -> Vec<S> {
    let n = shape.n;
    let (u, lambda, alpha) = split(n, x);
    let mut f = shape.grad_hstar(&u, &lambda, omega);
    let mut section = S::zero();
    for j in 0..n {
        let t = j3(u[j]);
        for a in 0..3 {
            f[3 * j + a] = f[3 * j + a] + alpha * t[a];
        }
        let b: V3<S> = lift3(anchor[j]);
        let jb = j3(b);
        for a in 0..3 {
            section = section + jb[a] * (u[j][a] - b[a]);
        }
    }
    f.push(section);
    f
}

/// `D_(u, lambda, alpha) F`; it does not depend on `omega`.
pub fn jacobian<S: Scalar>(shape: RingShape, x: &[S], anchor: &[[f64; 3]]) -> Mat<S> {
    let n = shape.n;
    let d = 4 * n + 1;
    let (u, lambda, alpha) = split(n, x);
    let m = S::from_int(shape.m as i64);
    let huu = shape.hess_hstar_uu(&u, &lambda);
    let mut jac = Mat::zeros(d, d);
    for i in 0..3 * n {
        for k in 0..3 * n {
            jac[(i, k)] = huu[(i, k)];
        }
    }
    for j in 0..n {
        let r = 3 * j;
        // alpha J3 acting on u_j
        jac[(r, r + 1)] = jac[(r, r + 1)] - alpha;
        jac[(r + 1, r)] = jac[(r + 1, r)] + alpha;
        let t = j3(u[j]);
        let jb = j3(lift3::<S>(anchor[j]));
        for a in 0..3 {
            jac[(r + a, 3 * n + j)] = m * u[j][a];
            jac[(3 * n + j, r + a)] = m * u[j][a];
            jac[(r + a, 4 * n)] = t[a];
            jac[(4 * n, r + a)] = jb[a];
        }
    }
    jac
}

/// `dF/d omega = (-m e3, ..., -m e3, 0, ..., 0)`.
pub fn omega_derivative<S: Scalar>(shape: RingShape) -> Vec<S> {
    let n = shape.n;
    let mut v = vec![S::zero(); 4 * n + 1];
    for j in 0..n {
        v[3 * j + 2] = -S::from_int(shape.m as i64);
    }
    v
}
