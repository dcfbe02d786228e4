use nalgebra::DMatrix;

use crate::complex::ComplexInterval;
use crate::error::IntervalError;
use crate::interval::Interval;
use crate::matrix::{norm_sup_matrix, ComplexIntervalMatrix, IntervalMatrix, Mat};
use crate::round;
use crate::scalar::Ring;

/// Largest size accepted by `complex_det_enclosure`.
pub const MAX_DET_SIZE: usize = 30;
const MAX_COFACTOR_SIZE: usize = 8;

pub fn to_dmatrix(m: &Mat<f64>) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.data())
}

pub fn from_dmatrix(m: &DMatrix<f64>) -> Mat<f64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Floating approximate inverse, if LU finds the matrix nonsingular.
pub fn float_inverse(m: &Mat<f64>) -> Option<Mat<f64>> {
    if !m.is_square() || m.data().iter().any(|x| !x.is_finite()) {
        return None;
    }
    let inv = to_dmatrix(m).try_inverse()?;
    if inv.iter().any(|x| !x.is_finite()) {
        return None;
    }
    Some(from_dmatrix(&inv))
}

#[derive(Clone, Debug)]
pub struct InverseEnclosure {
    /// Entrywise enclosure of the inverse of every point matrix.
    pub inverse: IntervalMatrix,
    /// Upper bound on `||I - R M||`.
    pub contraction: f64,
    /// Upper bound on `||M^{-1}||`.
    pub norm_bound: f64,
}

/// Proves every point matrix in `m` invertible by checking
/// `||I - R M|| < 1` for a floating inverse `R` of the midpoint.
pub fn verify_invertible(m: &IntervalMatrix) -> Result<InverseEnclosure, IntervalError> {
    if !m.is_square() {
        return Err(IntervalError::Shape(format!("{}x{} is not square", m.rows(), m.cols())));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(InverseEnclosure {
            inverse: IntervalMatrix::zeros(0, 0),
            contraction: 0.0,
            norm_bound: 0.0,
        });
    }
    let r = float_inverse(&m.mid()).ok_or(IntervalError::NotVerified { bound: f64::INFINITY })?;
    let ri = r.to_interval();
    let e = IntervalMatrix::identity(n).sub(&ri.mat_mul(m)?)?;
    let q = norm_sup_matrix(&e).hi();
    if !(q < 1.0) {
        return Err(IntervalError::NotVerified { bound: q });
    }
    // M^{-1} = R + E (I - E)^{-1} R, so the correction is at most q |R| / (1 - q).
    let rn = ri.norm_bound();
    let denom = round::sub_down(1.0, q);
    let delta = round::div_up(round::mul_up(q, rn), denom);
    Ok(InverseEnclosure {
        inverse: ri.map(|x| x.inflate(delta)),
        contraction: q,
        norm_bound: round::div_up(rn, denom),
    })
}

/// Enclosure of the determinant of every point matrix in `m`.
pub fn complex_det_enclosure(m: &ComplexIntervalMatrix) -> Result<ComplexInterval, IntervalError> {
    if !m.is_square() {
        return Err(IntervalError::Shape(format!("{}x{} is not square", m.rows(), m.cols())));
    }
    let n = m.rows();
    if n > MAX_DET_SIZE {
        return Err(IntervalError::UnsupportedSize(n));
    }
    let mut a: Vec<Vec<ComplexInterval>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut det = ComplexInterval::one();
    for k in 0..n {
        let (best, mig) = (k..n)
            .map(|r| (r, a[r][k].mig()))
            .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if mig <= 0.0 {
            let rest = n - k;
            if rest <= MAX_COFACTOR_SIZE {
                let sub: Vec<Vec<ComplexInterval>> = a[k..].iter().map(|row| row[k..].to_vec()).collect();
                return Ok(det * cofactor_det(&sub));
            }
            return Ok(ComplexInterval::entire());
        }
        if best != k {
            a.swap(best, k);
            det = -det;
        }
        let p = a[k][k];
        det = det * p;
        for r in k + 1..n {
            let f = a[r][k] / p;
            for c in k + 1..n {
                let t = f * a[k][c];
                a[r][c] = a[r][c] - t;
            }
        }
    }
    Ok(det)
}

fn cofactor_det(a: &[Vec<ComplexInterval>]) -> ComplexInterval {
    let n = a.len();
    match n {
        0 => ComplexInterval::one(),
        1 => a[0][0],
        2 => a[0][0] * a[1][1] - a[0][1] * a[1][0],
        _ => {
            let mut acc = ComplexInterval::zero();
            for j in 0..n {
                let minor: Vec<Vec<ComplexInterval>> = a[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let t = a[0][j] * cofactor_det(&minor);
                acc = if j % 2 == 0 { acc + t } else { acc - t };
            }
            acc
        }
    }
}

/// Real determinant enclosure via the complex routine.
pub fn det_enclosure(m: &IntervalMatrix) -> Result<Interval, IntervalError> {
    let c = m.map(|x| ComplexInterval::new(x, Interval::ZERO));
    Ok(complex_det_enclosure(&c)?.re)
}
