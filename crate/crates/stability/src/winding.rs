//! Certified eigenvalue counts in a rectangle through the argument
//! principle applied to `det(M - zI)`.

use std::f64::consts::PI;

use interval_core::{hypot_down, hypot_up, ComplexInterval, ComplexIntervalMatrix, Cx, Interval, Mat, Ring};
use nalgebra::{Complex, DMatrix};

use crate::StabilityError;

#[derive(Clone, Copy, Debug)]
pub struct WindingOptions {
    /// Initial cells per rectangle side.
    pub mesh: usize,
    /// Bisection depth allowed for a single cell.
    pub max_depth: u32,
}

impl Default for WindingOptions {
    fn default() -> Self {
        WindingOptions { mesh: 8, max_depth: 30 }
    }
}

/// Largest angular half-width of a cell's determinant enclosure.
const CELL_SECTOR: f64 = 0.45 * PI;
/// Largest angular half-width of an endpoint determinant enclosure.
const POINT_SECTOR: f64 = 0.05 * PI;

/// Half-width of the smallest sector at the origin containing `b`, or
/// `None` when `b` may contain zero.
fn sector(b: ComplexInterval) -> Option<f64> {
    if b.contains_zero() || !b.re.lo().is_finite() || !b.im.lo().is_finite() {
        return None;
    }
    let c = b.mid();
    let rho = hypot_up(
        (b.re.hi() - c.re).max(c.re - b.re.lo()),
        (b.im.hi() - c.im).max(c.im - b.im.lo()),
    ) * (1.0 + 4.0 * f64::EPSILON);
    let norm = hypot_down(c.re, c.im);
    if !(rho < norm) {
        return None;
    }
    Some((rho / norm).asin() * (1.0 + 1e-12) + 1e-15)
}

fn pt(re: f64, im: f64) -> ComplexInterval {
    ComplexInterval::point(re, im)
}

/// Gaussian elimination with the pivot of largest mignitude; `None` when
/// every candidate pivot may vanish.
fn elimination_det(mut a: Vec<Vec<ComplexInterval>>) -> Option<ComplexInterval> {
    let n = a.len();
    let mut det = ComplexInterval::one();
    for k in 0..n {
        let (best, mig) = (k..n)
            .map(|r| (r, a[r][k].mig()))
            .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if !(mig > 0.0) {
            return None;
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
    Some(det)
}

/// Enclosure of `det(M - zI)` over the box `z`, computed as
/// `det(R (M - zI)) / det(R)` with `R` a float inverse at the box center.
fn shifted_det(m: &ComplexIntervalMatrix, z: ComplexInterval) -> Option<ComplexInterval> {
    let d = m.rows();
    let a = Mat::from_fn(d, d, |i, k| if i == k { m[(i, k)] - z } else { m[(i, k)] });
    let c = a.mid();
    let r = DMatrix::from_fn(d, d, |i, k| Complex::new(c[(i, k)].re, c[(i, k)].im)).try_inverse()?;
    let ri: Vec<Vec<ComplexInterval>> = (0..d)
        .map(|i| (0..d).map(|k| pt(r[(i, k)].re, r[(i, k)].im)).collect())
        .collect();
    let b: Vec<Vec<ComplexInterval>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|k| (0..d).fold(ComplexInterval::zero(), |acc, t| acc + ri[i][t] * a[(t, k)]))
                .collect()
        })
        .collect();
    let det_b = elimination_det(b)?;
    let det_r = elimination_det(ri)?;
    if det_r.contains_zero() {
        return None;
    }
    Some(det_b / det_r)
}

fn cell(p: Cx<f64>, q: Cx<f64>) -> ComplexInterval {
    Cx::new(
        Interval::new(p.re.min(q.re), p.re.max(q.re)),
        Interval::new(p.im.min(q.im), p.im.max(q.im)),
    )
}

struct Walk<'a> {
    m: &'a ComplexIntervalMatrix,
    opts: WindingOptions,
    /// Sum of principal argument increments.
    total: f64,
    /// Bound on `|total - 2 pi W|`.
    error: f64,
}

impl Walk<'_> {
    fn endpoint(&self, z: Cx<f64>) -> Result<(f64, f64), ()> {
        let d = shifted_det(self.m, pt(z.re, z.im)).ok_or(())?;
        let theta = sector(d).ok_or(())?;
        if theta > POINT_SECTOR {
            return Err(());
        }
        let c = d.mid();
        Ok((c.im.atan2(c.re), theta))
    }

    /// Walks the cell `[p, q]`, its start value `(arg, theta)` known.
    fn cell(&mut self, p: Cx<f64>, q: Cx<f64>, start: (f64, f64), depth: u32) -> Result<(f64, f64), ()> {
        let whole = shifted_det(self.m, cell(p, q)).and_then(sector);
        let end = match whole {
            Some(theta) if theta < CELL_SECTOR => self.endpoint(q).ok(),
            _ => None,
        };
        if let Some(end) = end {
            let mut step = end.0 - start.0;
            if step > PI {
                step -= 2.0 * PI;
            } else if step < -PI {
                step += 2.0 * PI;
            }
            self.total += step;
            self.error += start.1 + end.1 + 4.0 * f64::EPSILON * PI;
            return Ok(end);
        }
        if depth >= self.opts.max_depth {
            return Err(());
        }
        let mid = Cx::new(0.5 * (p.re + q.re), 0.5 * (p.im + q.im));
        if (mid.re == p.re && mid.im == p.im) || (mid.re == q.re && mid.im == q.im) {
            return Err(());
        }
        let at_mid = self.cell(p, mid, start, depth + 1)?;
        self.cell(mid, q, at_mid, depth + 1)
    }
}

/// Number of eigenvalues inside `{|Re z - center| <= half_width, |Im z| <= 1}`
/// of every matrix in `m`.
pub fn count_eigenvalues_winding(
    m: &ComplexIntervalMatrix,
    center: f64,
    half_width: f64,
) -> Result<usize, StabilityError> {
    count_eigenvalues_winding_with(m, center - half_width, center + half_width, WindingOptions::default())
}

/// Count for the rectangle `[lo, hi] x [-1, 1]`.
pub fn count_eigenvalues_winding_with(
    m: &ComplexIntervalMatrix,
    lo: f64,
    hi: f64,
    opts: WindingOptions,
) -> Result<usize, StabilityError> {
    let hit = || StabilityError::BoundaryHit {
        center: 0.5 * (lo + hi),
        half_width: 0.5 * (hi - lo),
    };
    if !(lo < hi) {
        return Err(hit());
    }
    if m.rows() == 0 {
        return Ok(0);
    }
    let corners = [
        Cx::new(lo, -1.0),
        Cx::new(hi, -1.0),
        Cx::new(hi, 1.0),
        Cx::new(lo, 1.0),
    ];
    let mut walk = Walk {
        m,
        opts,
        total: 0.0,
        error: 0.0,
    };
    let mut at = walk.endpoint(corners[0]).map_err(|_| hit())?;
    for side in 0..4 {
        let (p, q) = (corners[side], corners[(side + 1) % 4]);
        let n = opts.mesh.max(1);
        let node = |k: usize| {
            if k == n {
                q
            } else {
                let t = k as f64 / n as f64;
                Cx::new(p.re + (q.re - p.re) * t, p.im + (q.im - p.im) * t)
            }
        };
        for k in 0..n {
            at = walk.cell(node(k), node(k + 1), at, 0).map_err(|_| hit())?;
        }
    }
    let w = (walk.total / (2.0 * PI)).round();
    if walk.error >= 0.5 * PI || (walk.total - 2.0 * PI * w).abs() + walk.error >= PI || w < 0.0 {
        return Err(hit());
    }
    Ok(w as usize)
}
