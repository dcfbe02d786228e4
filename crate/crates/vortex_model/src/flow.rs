//! Fixed-step RK4 for the full and reduced equations of motion.

use crate::full::{rhs, VortexParameters};
use crate::ring::RingShape;
use crate::vec3::V3;

fn axpy(x: &[V3<f64>], h: f64, k: &[V3<f64>]) -> Vec<V3<f64>> {
    x.iter()
        .zip(k)
        .map(|(a, b)| [a[0] + h * b[0], a[1] + h * b[1], a[2] + h * b[2]])
        .collect()
}

fn rk4_step(x: &[V3<f64>], dt: f64, f: &impl Fn(&[V3<f64>]) -> Vec<V3<f64>>) -> Vec<V3<f64>> {
    let k1 = f(x);
    let k2 = f(&axpy(x, dt / 2.0, &k1));
    let k3 = f(&axpy(x, dt / 2.0, &k2));
    let k4 = f(&axpy(x, dt, &k3));
    (0..x.len())
        .map(|i| {
            let mut out = x[i];
            for a in 0..3 {
                out[a] += dt / 6.0 * (k1[i][a] + 2.0 * k2[i][a] + 2.0 * k3[i][a] + k4[i][a]);
            }
            out
        })
        .collect()
}

/// States at `t = 0, dt, ..., steps*dt`.
pub fn integrate(
    x0: &[V3<f64>],
    dt: f64,
    steps: usize,
    f: impl Fn(&[V3<f64>]) -> Vec<V3<f64>>,
) -> Vec<Vec<V3<f64>>> {
    let mut out = Vec::with_capacity(steps + 1);
    out.push(x0.to_vec());
    for s in 0..steps {
        let next = rk4_step(&out[s], dt, &f);
        out.push(next);
    }
    out
}

pub fn integrate_full(v0: &[V3<f64>], params: &VortexParameters, dt: f64, steps: usize) -> Vec<Vec<V3<f64>>> {
    integrate(v0, dt, steps, |v| rhs(v, params))
}

pub fn integrate_reduced(shape: RingShape, u0: &[V3<f64>], dt: f64, steps: usize) -> Vec<Vec<V3<f64>>> {
    integrate(u0, dt, steps, |u| shape.reduced_rhs(u))
}
