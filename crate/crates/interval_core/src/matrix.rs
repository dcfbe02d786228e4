use std::ops::{Index, IndexMut};

use crate::complex::{ComplexInterval, Cx};
use crate::error::IntervalError;
use crate::interval::Interval;
use crate::round;
use crate::scalar::Ring;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntervalVector = Vec<Interval>;
pub type IntervalMatrix = Mat<Interval>;
pub type ComplexIntervalVector = Vec<ComplexInterval>;
pub type ComplexIntervalMatrix = Mat<ComplexInterval>;

impl<T: Ring> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self, IntervalError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(IntervalError::Shape("ragged rows".into()));
        }
        Ok(Mat::from_fn(r, c, |i, j| rows[i][j]))
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(n_rows: usize, cols: &[Vec<T>]) -> Result<Self, IntervalError> {
        if cols.iter().any(|c| c.len() != n_rows) {
            return Err(IntervalError::Shape("column length mismatch".into()));
        }
        Ok(Mat::from_fn(n_rows, cols.len(), |i, j| cols[j][i]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn map<U: Ring>(&self, f: impl Fn(T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn mat_mul(&self, rhs: &Mat<T>) -> Result<Mat<T>, IntervalError> {
        if self.cols != rhs.rows {
            return Err(IntervalError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                let rrow = rhs.row(k);
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, &b) in orow.iter_mut().zip(rrow) {
                    *o = *o + a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mat_vec(&self, v: &[T]) -> Result<Vec<T>, IntervalError> {
        if self.cols != v.len() {
            return Err(IntervalError::Shape(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect())
    }

    pub fn add(&self, rhs: &Mat<T>) -> Result<Mat<T>, IntervalError> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Mat<T>) -> Result<Mat<T>, IntervalError> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(&self, rhs: &Mat<T>, f: impl Fn(T, T) -> T) -> Result<Mat<T>, IntervalError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(IntervalError::Shape(format!(
                "{}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, s: T) -> Mat<T> {
        self.map(|x| x * s)
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat<T> {
        Mat::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)])
    }

    /// Upper bound on the induced infinity norm.
    pub fn norm_bound(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().fold(0.0, |acc, x| round::add_up(acc, x.mag())))
            .fold(0.0, f64::max)
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl Mat<f64> {
    pub fn to_interval(&self) -> IntervalMatrix {
        self.map(Interval::point)
    }
}

impl Mat<Cx<f64>> {
    pub fn to_interval(&self) -> ComplexIntervalMatrix {
        self.map(|z| ComplexInterval::point(z.re, z.im))
    }
}

impl IntervalMatrix {
    pub fn mid(&self) -> Mat<f64> {
        self.map(|x| x.mid())
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    /// Largest entry radius.
    pub fn max_rad(&self) -> f64 {
        self.data.iter().map(|x| x.rad()).fold(0.0, f64::max)
    }

    /// `(M + M^T) / 2`.
    pub fn symmetrized(&self) -> IntervalMatrix {
        let half = Interval::point(0.5);
        Mat::from_fn(self.rows, self.cols, |i, j| (self[(i, j)] + self[(j, i)]) * half)
    }
}

impl ComplexIntervalMatrix {
    pub fn mid(&self) -> Mat<Cx<f64>> {
        self.map(|x| x.mid())
    }

    /// `(M + M^H) / 2`.
    pub fn hermitized(&self) -> ComplexIntervalMatrix {
        let half = Interval::point(0.5);
        Mat::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()).scale(half)
        })
    }

    /// Real matrix `[[Re, -Im], [Im, Re]]` acting on (re, im) coordinates.
    pub fn realified(&self) -> IntervalMatrix {
        let n = self.rows;
        let m = self.cols;
        Mat::from_fn(2 * n, 2 * m, |i, j| {
            let z = self[(i % n, j % m)];
            match (i < n, j < m) {
                (true, true) | (false, false) => z.re,
                (true, false) => -z.im,
                (false, true) => z.im,
            }
        })
    }
}

/// Sup norm of an interval vector as an interval `[max mig, max mag]`.
pub fn norm_sup(v: &[Interval]) -> Interval {
    let lo = v.iter().map(|x| x.mig()).fold(0.0, f64::max);
    let hi = v.iter().map(|x| x.mag()).fold(0.0, f64::max);
    Interval::new(lo, hi)
}

/// Induced infinity norm of an interval matrix as an interval.
pub fn norm_sup_matrix(m: &IntervalMatrix) -> Interval {
    let mut lo = 0.0f64;
    let mut hi = 0.0f64;
    for i in 0..m.rows() {
        let (mut l, mut h) = (0.0, 0.0);
        for x in m.row(i) {
            l = round::add_down(l, x.mig());
            h = round::add_up(h, x.mag());
        }
        lo = lo.max(l);
        hi = hi.max(h);
    }
    Interval::new(lo, hi)
}

pub fn mat_mul<T: Ring>(a: &Mat<T>, b: &Mat<T>) -> Result<Mat<T>, IntervalError> {
    a.mat_mul(b)
}

pub fn mat_vec<T: Ring>(a: &Mat<T>, v: &[T]) -> Result<Vec<T>, IntervalError> {
    a.mat_vec(v)
}
