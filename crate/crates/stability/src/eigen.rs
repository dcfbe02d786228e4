//! Eigenpairs of Hermitian interval matrices: float decomposition and
//! Newton-Kantorovich validation of simple eigenvalues.

use interval_core::{
    float_inverse, norm_sup, norm_sup_matrix, ComplexInterval, ComplexIntervalMatrix, Cx, Interval, IntervalMatrix, Mat,
    Ring,
};
use nalgebra::{Complex, DMatrix};

use crate::StabilityError;

/// Float eigenvalues (ascending) and unit eigenvectors of the Hermitian
/// part of `m`.
pub fn float_eigen(m: &Mat<Cx<f64>>) -> Vec<(f64, Vec<Cx<f64>>)> {
    let d = m.rows();
    let a = DMatrix::from_fn(d, d, |i, k| {
        let (x, y) = (m[(i, k)], m[(k, i)]);
        Complex::new(0.5 * (x.re + y.re), 0.5 * (x.im - y.im))
    });
    let eig = a.symmetric_eigen();
    let mut pairs: Vec<(f64, Vec<Cx<f64>>)> = (0..d)
        .map(|k| {
            let v = eig.eigenvectors.column(k).iter().map(|c| Cx::new(c.re, c.im)).collect();
            (eig.eigenvalues[k], v)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs
}

/// Largest `|DG^{-1}| (1 + |M|)` accepted; beyond it the eigenvalue is
/// separated from its neighbours only at rounding level and goes to the
/// cluster path.
pub const MAX_CONDITION: f64 = 1e8;

#[derive(Clone, Debug)]
pub struct EigenEnclosure {
    /// Encloses the real eigenvalue of every Hermitian matrix in the input.
    pub value: Interval,
    /// Sup-norm radius of the validated ball around `(lambda, v)`.
    pub radius: f64,
    /// Normalized component `v_j = 1`.
    pub normalization: usize,
    pub contraction: f64,
}

/// Realified `(lambda, v)` layout: real parts of `(lambda, v_0..)` then
/// imaginary parts.
fn split(w: &[ComplexInterval]) -> Vec<Interval> {
    w.iter().map(|c| c.re).chain(w.iter().map(|c| c.im)).collect()
}

fn residual(m: &ComplexIntervalMatrix, w: &[ComplexInterval], j: usize) -> Vec<ComplexInterval> {
    let d = m.rows();
    let lambda = w[0];
    let mut g: Vec<ComplexInterval> = (0..d)
        .map(|i| {
            let mv = (0..d).fold(Cx::zero(), |acc, k| acc + m[(i, k)] * w[1 + k]);
            mv - lambda * w[1 + i]
        })
        .collect();
    g.push(w[1 + j] - Cx::one());
    g
}

/// `DG(lambda, v)` as a complex matrix, holomorphic in the unknowns.
fn derivative(m: &ComplexIntervalMatrix, w: &[ComplexInterval], j: usize) -> ComplexIntervalMatrix {
    let d = m.rows();
    Mat::from_fn(d + 1, d + 1, |i, k| match (i < d, k) {
        (true, 0) => -w[1 + i],
        (true, k) if k - 1 == i => m[(i, i)] - w[0],
        (true, k) => m[(i, k - 1)],
        (false, k) if k == 1 + j => Cx::one(),
        (false, _) => Cx::zero(),
    })
}

fn ball(center: &[Cx<f64>], r: f64) -> Vec<ComplexInterval> {
    center
        .iter()
        .map(|c| Cx::new(Interval::ball(c.re, r), Interval::ball(c.im, r)))
        .collect()
}

/// Validates the eigenpair of `m` near `(lambda, v)` with `v` normalized at
/// its first component of largest modulus.
pub fn validate_simple_eigenpair(
    m: &ComplexIntervalMatrix,
    lambda: f64,
    v: &[Cx<f64>],
) -> Result<EigenEnclosure, StabilityError> {
    let d = m.rows();
    let not_isolated = |z: f64| StabilityError::NotIsolated { lambda, z };
    if d == 0 || v.len() != d {
        return Err(not_isolated(f64::INFINITY));
    }
    let mags: Vec<f64> = v.iter().map(|c| c.re.hypot(c.im)).collect();
    let top = mags.iter().cloned().fold(0.0, f64::max);
    let j = mags.iter().position(|&x| x == top).unwrap_or(0);
    if !(top > 0.0) {
        return Err(not_isolated(f64::INFINITY));
    }
    let pivot = v[j];
    let mut center = vec![Cx::new(lambda, 0.0)];
    center.extend(v.iter().map(|&c| c / pivot));
    center[1 + j] = Cx::new(1.0, 0.0);

    let w0 = ball(&center, 0.0);
    let dg0 = derivative(m, &w0, j).realified();
    let a = float_inverse(&dg0.mid()).ok_or_else(|| not_isolated(f64::INFINITY))?;
    let a = a.to_interval();
    let cond = norm_sup_matrix(&a).hi() * (1.0 + norm_sup_matrix(&m.realified()).hi());
    if !(cond <= MAX_CONDITION) {
        return Err(not_isolated(f64::INFINITY));
    }
    let y = norm_sup(&a.mat_vec(&split(&residual(m, &w0, j)))?).hi();
    let id = IntervalMatrix::identity(2 * (d + 1));
    let z_at = |r: f64| -> Result<f64, StabilityError> {
        let dg = derivative(m, &ball(&center, r), j).realified();
        Ok(norm_sup_matrix(&id.sub(&a.mat_mul(&dg)?)?).hi())
    };
    let z0 = z_at(0.0)?;
    if !(z0 < 1.0) || !y.is_finite() {
        return Err(not_isolated(z0));
    }
    let mut r = (2.0 * y / (1.0 - z0)).max(f64::MIN_POSITIVE);
    for _ in 0..40 {
        let z = z_at(r)?;
        let p = (Interval::point(z) - Interval::ONE) * Interval::point(r) + Interval::point(y);
        if z < 1.0 && p.is_neg() {
            return Ok(EigenEnclosure {
                value: Interval::ball(center[0].re, r),
                radius: r,
                normalization: j,
                contraction: z,
            });
        }
        if z >= 1.0 {
            return Err(not_isolated(z));
        }
        r *= 2.0;
    }
    Err(not_isolated(z0))
}
