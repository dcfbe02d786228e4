//! Newton-Kantorovich validation of zeros of the augmented map, at a point
//! and uniformly along a segment, in the sup norm.

use std::fmt;

use interval_core::{float_inverse, norm_sup, norm_sup_matrix, Interval, IntervalMatrix, Mat};
use serde::{Deserialize, Serialize};
use vortex_model::RingShape;

use crate::certificate::BranchCertificate;
use crate::error::ContinuationError;
use crate::map::{augmented_map, jacobian, omega_derivative};
use crate::point::AugmentedPoint;

pub const NORM_ID: &str = "sup";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NKBounds {
    #[serde(rename = "Y")]
    pub y: f64,
    #[serde(rename = "Yhat")]
    pub y_hat: f64,
    #[serde(rename = "Z")]
    pub z: f64,
    pub rstar: f64,
    pub r0: Option<f64>,
    pub norm: String,
}

impl NKBounds {
    /// Upper bound of `p(r) = (Z - 1) r + Y + Yhat`.
    pub fn radii_polynomial(&self, r: f64) -> f64 {
        ((Interval::point(self.z) - Interval::ONE) * Interval::point(r) + Interval::point(self.y) + Interval::point(self.y_hat))
            .hi()
    }
}

/// Bounds of a failed validation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub omega: [f64; 2],
    pub bounds: NKBounds,
    pub reason: String,
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} on omega in [{}, {}] (Y={:e}, Yhat={:e}, Z={:e}, r*={:e})",
            self.reason, self.omega[0], self.omega[1], self.bounds.y, self.bounds.y_hat, self.bounds.z, self.bounds.rstar
        )
    }
}

#[derive(Clone, Debug)]
pub struct NKOptions {
    /// Initial `r*`, halved while `Z >= 1`.
    pub rstar: f64,
    pub rstar_halvings: usize,
    /// Subdivisions of `s in [0, 1]` tried in turn for segment bounds.
    pub pieces: Vec<usize>,
}

impl Default for NKOptions {
    fn default() -> Self {
        NKOptions {
            rstar: 1e-4,
            rstar_halvings: 24,
            pieces: vec![8, 32],
        }
    }
}

#[derive(Clone, Debug)]
pub struct PointValidation {
    pub center: AugmentedPoint,
    pub anchor: Vec<[f64; 3]>,
    pub bounds: NKBounds,
    /// Componentwise radii, each at most `r0`.
    pub radii: Vec<f64>,
}

impl PointValidation {
    pub fn r0(&self) -> f64 {
        self.bounds.r0.expect("validated")
    }

    /// Enclosure of `(u, lambda, alpha)` at the validated `omega`.
    pub fn enclosure(&self) -> Vec<Interval> {
        self.center.to_vec().iter().zip(&self.radii).map(|(&c, &r)| Interval::ball(c, r)).collect()
    }

    pub fn certificate(&self, shape: RingShape) -> BranchCertificate {
        BranchCertificate::new(shape, &self.anchor, &self.center, &self.center, self.bounds.clone())
    }
}

/// Smallest representable `r0` with `p(r0) < 0`, if one exists below `rstar`.
pub fn radii_root(y_total: f64, z: f64, rstar: f64) -> Option<f64> {
    if !(z < 1.0) || !y_total.is_finite() {
        return None;
    }
    let one_minus = Interval::ONE - Interval::point(z);
    let base = (Interval::point(y_total) / one_minus).hi();
    let r = base * (1.0 + 1e-9) + 1e-300;
    let p = (Interval::point(z) - Interval::ONE) * Interval::point(r) + Interval::point(y_total);
    if r <= rstar && p.hi() < 0.0 {
        Some(r)
    } else {
        None
    }
}

fn points(x: &[f64]) -> Vec<Interval> {
    x.iter().map(|&v| Interval::point(v)).collect()
}

fn ball(x: &[Interval], r: f64) -> Vec<Interval> {
    x.iter().map(|v| *v + Interval::new(-r, r)).collect()
}

fn preconditioner(shape: RingShape, x: &[f64], anchor: &[[f64; 3]], omega: [f64; 2]) -> Result<IntervalMatrix, ContinuationError> {
    let j = jacobian::<f64>(shape, x, anchor);
    float_inverse(&j).map(|a| a.to_interval()).ok_or_else(|| {
        ContinuationError::NotValidated(Diagnostics {
            omega,
            bounds: empty_bounds(0.0),
            reason: "singular Jacobian at the numerical zero".into(),
        })
    })
}

fn empty_bounds(rstar: f64) -> NKBounds {
    NKBounds {
        y: f64::INFINITY,
        y_hat: 0.0,
        z: f64::INFINITY,
        rstar,
        r0: None,
        norm: NORM_ID.into(),
    }
}

/// `|I - A DF(X)|` over an interval box `X`.
fn defect(shape: RingShape, a: &IntervalMatrix, x: &[Interval], anchor: &[[f64; 3]]) -> IntervalMatrix {
    let adf = a.mat_mul(&jacobian(shape, x, anchor)).expect("square");
    Mat::identity(adf.rows()).sub(&adf).expect("square")
}

fn check_inputs(shape: RingShape, x: &AugmentedPoint, anchor: &[[f64; 3]]) -> Result<(), ContinuationError> {
    x.check(shape)?;
    if anchor.len() != shape.n {
        return Err(ContinuationError::Shape(format!("{} anchor vectors for n={}", anchor.len(), shape.n)));
    }
    Ok(())
}

/// The uniform theorem with `s = 0`: `Yhat = 0`.
pub fn nk_validate_point(
    shape: RingShape,
    xbar: &AugmentedPoint,
    anchor: &[[f64; 3]],
    opts: &NKOptions,
) -> Result<PointValidation, ContinuationError> {
    check_inputs(shape, xbar, anchor)?;
    let omega = [xbar.omega, xbar.omega];
    let x = xbar.to_vec();
    let a = preconditioner(shape, &x, anchor, omega)?;
    let xi = points(&x);
    let fx = augmented_map(shape, &xi, Interval::point(xbar.omega), anchor);
    let af = a.mat_vec(&fx).expect("dims");
    let y = norm_sup(&af).hi();
    let mut rstar = opts.rstar;
    let mut bounds = empty_bounds(rstar);
    bounds.y = y;
    for _ in 0..=opts.rstar_halvings {
        let z = norm_sup_matrix(&defect(shape, &a, &ball(&xi, rstar), anchor)).hi();
        bounds.z = z;
        bounds.rstar = rstar;
        if z < 1.0 {
            if let Some(mut r0) = radii_root(y, z, rstar) {
                // a smaller r* tightens Z, hence r0
                for _ in 0..3 {
                    let tight = 8.0 * r0;
                    if tight >= bounds.rstar {
                        break;
                    }
                    let zt = norm_sup_matrix(&defect(shape, &a, &ball(&xi, tight), anchor)).hi();
                    match radii_root(y, zt, tight) {
                        Some(rt) if rt < r0 => {
                            r0 = rt;
                            bounds.z = zt;
                            bounds.rstar = tight;
                        }
                        _ => break,
                    }
                }
                bounds.r0 = Some(r0);
                let e = defect(shape, &a, &ball(&xi, r0), anchor);
                let radii = (0..x.len())
                    .map(|i| {
                        let mut acc = Interval::point(af[i].mag());
                        for k in 0..x.len() {
                            acc += Interval::point(e[(i, k)].mag()) * Interval::point(r0);
                        }
                        acc.hi().min(r0)
                    })
                    .collect();
                return Ok(PointValidation {
                    center: xbar.clone(),
                    anchor: anchor.to_vec(),
                    bounds,
                    radii,
                });
            }
            break;
        }
        rstar *= 0.5;
    }
    Err(ContinuationError::NotValidated(Diagnostics {
        omega,
        bounds,
        reason: "no admissible r0".into(),
    }))
}

/// The uniform theorem on the segment `x_s = (1 - s) x0 + s x1`, `s in [0, 1]`.
pub fn nk_validate_segment(
    shape: RingShape,
    x0: &AugmentedPoint,
    x1: &AugmentedPoint,
    anchor: &[[f64; 3]],
    opts: &NKOptions,
) -> Result<BranchCertificate, ContinuationError> {
    check_inputs(shape, x0, anchor)?;
    check_inputs(shape, x1, anchor)?;
    if x0 == x1 {
        return nk_validate_point(shape, x0, anchor, opts).map(|v| v.certificate(shape));
    }
    let omega = [x0.omega.min(x1.omega), x0.omega.max(x1.omega)];
    let v0 = x0.to_vec();
    let a = preconditioner(shape, &v0, anchor, omega)?;
    let p0 = points(&v0);
    let w0 = Interval::point(x0.omega);
    let f0 = augmented_map(shape, &p0, w0, anchor);
    let y = norm_sup(&a.mat_vec(&f0).expect("dims")).hi();
    let dx: Vec<Interval> = x1.to_vec().iter().zip(&v0).map(|(&b, &c)| Interval::point(b) - Interval::point(c)).collect();
    let dw = Interval::point(x1.omega) - w0;
    let f_omega = omega_derivative::<Interval>(shape);
    let along = |s: Interval| -> (Vec<Interval>, Interval) {
        (p0.iter().zip(&dx).map(|(&c, &d)| c + s * d).collect(), w0 + s * dw)
    };

    let mut last = empty_bounds(opts.rstar);
    last.y = y;
    for &k in &opts.pieces {
        let h = 1.0 / k as f64;
        let mut y_hat: f64 = 0.0;
        let mut hulls = Vec::with_capacity(k);
        for piece in 0..k {
            let (sa, sb) = (piece as f64 * h, (piece + 1) as f64 * h);
            let (xc, wc) = along(Interval::point(0.5 * (sa + sb)));
            let (xh, _) = along(Interval::new(sa, sb));
            // F over the piece lies in F(x_c) + [-h/2, h/2] dF/ds(hull)
            let fc = augmented_map(shape, &xc, wc, anchor);
            let dfds: Vec<Interval> = jacobian(shape, &xh, anchor)
                .mat_vec(&dx)
                .expect("dims")
                .iter()
                .zip(&f_omega)
                .map(|(&j, &o)| j + o * dw)
                .collect();
            let half = Interval::new(-0.5 * h, 0.5 * h);
            let diff: Vec<Interval> = fc.iter().zip(&dfds).zip(&f0).map(|((&c, &d), &z)| c + half * d - z).collect();
            y_hat = y_hat.max(norm_sup(&a.mat_vec(&diff).expect("dims")).hi());
            hulls.push(xh);
        }
        let z_at = |r: f64| {
            hulls
                .iter()
                .map(|xh| norm_sup_matrix(&defect(shape, &a, &ball(xh, r), anchor)).hi())
                .fold(0.0, f64::max)
        };
        let total = (Interval::point(y) + Interval::point(y_hat)).hi();
        let z0 = z_at(0.0);
        last = NKBounds {
            y,
            y_hat,
            z: z0,
            rstar: 0.0,
            r0: None,
            norm: NORM_ID.into(),
        };
        if !(z0 < 1.0) {
            continue;
        }
        // Z grows roughly linearly in r*; aim for Z halfway between Z(0) and 1
        let z1 = z_at(opts.rstar);
        let slope = (z1 - z0).max(0.0) / opts.rstar;
        let mut rstar = if slope > 0.0 { opts.rstar.min(0.5 * (1.0 - z0) / slope) } else { opts.rstar };
        let mut prev_z = f64::INFINITY;
        for _ in 0..=opts.rstar_halvings {
            let z = if rstar == opts.rstar { z1 } else { z_at(rstar) };
            last.z = z;
            last.rstar = rstar;
            if z < 1.0 {
                if let Some(r0) = radii_root(total, z, rstar) {
                    last.r0 = Some(r0);
                    return Ok(BranchCertificate::new(shape, anchor, x0, x1, last));
                }
                // Y + Yhat is too large; finer pieces will not help
                return Err(ContinuationError::NotValidated(Diagnostics {
                    omega,
                    bounds: last,
                    reason: "no admissible r0 on the segment".into(),
                }));
            }
            if prev_z - z < 1e-3 {
                break;
            }
            prev_z = z;
            rstar *= 0.5;
        }
    }
    Err(ContinuationError::NotValidated(Diagnostics {
        omega,
        bounds: last,
        reason: "no admissible r0 on the segment".into(),
    }))
}
