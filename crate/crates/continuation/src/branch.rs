//! Predictor-corrector walk along a branch and certification of its segments.

use std::thread;

use vortex_model::{RingShape, RingSystem};

use crate::certificate::BranchCertificate;
use crate::error::ContinuationError;
use crate::newton::newton_polish;
use crate::nk::{nk_validate_segment, Diagnostics, NKBounds, NKOptions, NORM_ID};
use crate::point::AugmentedPoint;

#[derive(Clone, Debug)]
pub struct StepPolicy {
    pub initial: f64,
    pub max: f64,
    /// Below this step the branch is reported as stalled.
    pub min: f64,
    /// Validate segments; otherwise the chain is numerical only.
    pub rigor: bool,
    pub workers: usize,
    pub nk: NKOptions,
}

impl Default for StepPolicy {
    fn default() -> Self {
        StepPolicy {
            initial: 1e-2,
            max: 1e-2,
            min: 1e-6,
            rigor: true,
            workers: thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            nk: NKOptions::default(),
        }
    }
}

/// Corrector result at `omega`, anchored at the generators of `from`.
fn corrector(shape: RingShape, from: &AugmentedPoint, pred: &AugmentedPoint, omega: f64) -> Result<AugmentedPoint, ContinuationError> {
    let x = newton_polish(shape, pred, &from.u, omega)?;
    // refuse jumps to a different branch
    let jump = x.to_vec().iter().zip(pred.to_vec()).fold(0.0f64, |a, (p, q)| a.max((p - q).abs()));
    let scale = 1.0 + (omega - from.omega).abs() * 100.0;
    if jump > 0.1 * scale {
        return Err(ContinuationError::NoConvergence {
            iterations: 0,
            residual: jump,
        });
    }
    Ok(x)
}

fn predict(prev: Option<&AugmentedPoint>, x: &AugmentedPoint, omega: f64) -> AugmentedPoint {
    match prev {
        Some(p) if p.omega != x.omega => {
            let t = (omega - x.omega) / (x.omega - p.omega);
            let v: Vec<f64> = x.to_vec().iter().zip(p.to_vec()).map(|(a, b)| a + t * (a - b)).collect();
            AugmentedPoint::from_vec(&v, omega).expect("same layout")
        }
        _ => AugmentedPoint { omega, ..x.clone() },
    }
}

/// Polished starting point of a branch at `omega`.
pub fn seed_point(seed: &RingSystem, omega: f64) -> Result<AugmentedPoint, ContinuationError> {
    newton_polish(seed.shape, &AugmentedPoint::from_rings(seed, omega), &seed.u, omega)
}

/// Numerical walk from `start` to `omega_to` (either direction). Each point
/// satisfies the section equation anchored at its predecessor.
pub fn track(
    shape: RingShape,
    start: &AugmentedPoint,
    omega_to: f64,
    policy: &StepPolicy,
) -> Result<Vec<AugmentedPoint>, ContinuationError> {
    let dir = if omega_to >= start.omega { 1.0 } else { -1.0 };
    let mut pts = vec![start.clone()];
    let mut step = policy.initial;
    while (omega_to - pts.last().unwrap().omega) * dir > 0.0 {
        let x = pts.last().unwrap();
        let omega = if (omega_to - x.omega).abs() <= step { omega_to } else { x.omega + dir * step };
        let prev = if pts.len() >= 2 { pts.get(pts.len() - 2) } else { None };
        match corrector(shape, x, &predict(prev, x, omega), omega) {
            Ok(next) => {
                pts.push(next);
                step = (2.0 * step).min(policy.max);
            }
            Err(e) => {
                step *= 0.5;
                if step < policy.min {
                    let bounds = NKBounds {
                        y: f64::INFINITY,
                        y_hat: 0.0,
                        z: f64::INFINITY,
                        rstar: policy.nk.rstar,
                        r0: None,
                        norm: NORM_ID.into(),
                    };
                    return Err(ContinuationError::BranchStalled {
                        omega: x.omega,
                        certificates: Vec::new(),
                        last: Some(Diagnostics {
                            omega: [x.omega, omega],
                            bounds,
                            reason: format!("corrector failed: {e}"),
                        }),
                    });
                }
            }
        }
    }
    Ok(pts)
}

fn numeric_certificate(shape: RingShape, x0: &AugmentedPoint, x1: &AugmentedPoint) -> BranchCertificate {
    let bounds = NKBounds {
        y: 0.0,
        y_hat: 0.0,
        z: 0.0,
        rstar: 0.0,
        r0: None,
        norm: NORM_ID.into(),
    };
    let mut c = BranchCertificate::new(shape, &x0.u, x0, x1, bounds);
    c.status = "numeric".into();
    c
}

/// Validate `[x0, x1]` with the section anchored at `anchor`, bisecting in
/// omega on failure down to `policy.min`. Returns the certified pieces in
/// order and the first failure, if any.
pub fn certify_segment(
    shape: RingShape,
    x0: &AugmentedPoint,
    x1: &AugmentedPoint,
    anchor: &[[f64; 3]],
    policy: &StepPolicy,
) -> (Vec<BranchCertificate>, Option<Diagnostics>) {
    let diag = match nk_validate_segment(shape, x0, x1, anchor, &policy.nk) {
        Ok(c) => return (vec![c], None),
        Err(ContinuationError::NotValidated(d)) => d,
        Err(other) => Diagnostics {
            omega: [x0.omega, x1.omega],
            bounds: NKBounds {
                y: f64::INFINITY,
                y_hat: 0.0,
                z: f64::INFINITY,
                rstar: policy.nk.rstar,
                r0: None,
                norm: NORM_ID.into(),
            },
            reason: other.to_string(),
        },
    };
    let half = 0.5 * (x1.omega - x0.omega);
    if half.abs() < policy.min {
        return (Vec::new(), Some(diag));
    }
    let mid = x0.omega + half;
    let v: Vec<f64> = x0.to_vec().iter().zip(x1.to_vec()).map(|(a, b)| 0.5 * (a + b)).collect();
    let guess = AugmentedPoint::from_vec(&v, mid).expect("same layout");
    let xm = match newton_polish(shape, &guess, anchor, mid) {
        Ok(xm) => xm,
        Err(_) => return (Vec::new(), Some(diag)),
    };
    let (mut left, fail) = certify_segment(shape, x0, &xm, anchor, policy);
    if fail.is_some() {
        return (left, fail);
    }
    let (right, fail) = certify_segment(shape, &xm, x1, anchor, policy);
    left.extend(right);
    (left, fail)
}

/// Certified chain over `[omega_from, omega_to]` starting from a seed near the
/// branch at `omega_from`. An empty or reversed range gives an empty chain.
pub fn continue_branch(
    seed: &RingSystem,
    omega_from: f64,
    omega_to: f64,
    policy: &StepPolicy,
) -> Result<Vec<BranchCertificate>, ContinuationError> {
    if !(omega_to > omega_from) {
        return Ok(Vec::new());
    }
    let shape = seed.shape;
    let start = seed_point(seed, omega_from)?;
    let pts = track(shape, &start, omega_to, policy)?;
    continue_from_points(shape, &pts, policy)
}

/// Certify consecutive pairs of a numerical walk produced by [`track`].
pub fn continue_from_points(
    shape: RingShape,
    pts: &[AugmentedPoint],
    policy: &StepPolicy,
) -> Result<Vec<BranchCertificate>, ContinuationError> {
    let pairs: Vec<(&AugmentedPoint, &AugmentedPoint)> = pts.windows(2).map(|w| (&w[0], &w[1])).collect();
    if !policy.rigor {
        return Ok(pairs.iter().map(|(a, b)| numeric_certificate(shape, a, b)).collect());
    }
    let workers = policy.workers.max(1);
    let mut results: Vec<(Vec<BranchCertificate>, Option<Diagnostics>)> = Vec::with_capacity(pairs.len());
    for batch in pairs.chunks(workers) {
        let out: Vec<_> = thread::scope(|s| {
            let handles: Vec<_> = batch
                .iter()
                .map(|(a, b)| s.spawn(move || certify_segment(shape, a, b, &a.u, policy)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("validation worker panicked")).collect()
        });
        let failed = out.iter().any(|(_, f)| f.is_some());
        results.extend(out);
        if failed {
            break;
        }
    }
    let mut chain = Vec::new();
    for (certs, fail) in results {
        chain.extend(certs);
        if let Some(d) = fail {
            let omega = chain.last().map(|c| c.omega[1]).unwrap_or(d.omega[0]);
            return Err(ContinuationError::BranchStalled {
                omega,
                certificates: chain,
                last: Some(d),
            });
        }
    }
    Ok(chain)
}
