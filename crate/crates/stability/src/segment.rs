//! Propagation of positivity along a certified branch segment by
//! continuity: positive at `omega_0` and invertible on the whole tube.

use continuation::{newton_polish, nk_validate_point, nk_validate_segment, AugmentedPoint, BranchCertificate, NKOptions};
use interval_core::{verify_invertible, Interval, IntervalMatrix};
use serde_json::{json, Value};
use vortex_model::vec3::V3;

use crate::blocks::{blocks_at, hermitian, Block};
use crate::slice::{BlockKind, Pivot};
use crate::verdict::{stability_test_with_pivot, StabilityOptions, StabilityVerdict, Verdict};
use crate::StabilityError;

#[derive(Clone, Debug)]
pub struct SegmentStability {
    pub omega: [f64; 2],
    /// Verdict at `omega_0`.
    pub start: StabilityVerdict,
    /// Every block is invertible over the whole tube.
    pub propagated: bool,
    /// Tube pieces on which every block was verified invertible.
    pub pieces: usize,
    pub reason: Option<String>,
}

impl SegmentStability {
    pub fn is_stable(&self) -> bool {
        self.start.is_stable() && self.propagated
    }

    pub fn verdict_label(&self) -> &'static str {
        if self.is_stable() {
            "CertifiedStable"
        } else if self.start.is_stable() {
            "Inconclusive"
        } else {
            self.start.verdict.label()
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "omega": self.omega,
            "start": self.start.to_json(),
            "propagated": self.propagated,
            "pieces": self.pieces,
            "verdict": self.verdict_label(),
            "reason": self.reason,
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SegmentOptions {
    pub stability: StabilityOptions,
    /// Bisection depth of `s in [0, 1]` for one invertibility check.
    pub s_depth: u32,
    /// Times the segment may be halved in omega and re-validated to
    /// obtain a thinner tube.
    pub omega_depth: u32,
}

impl Default for SegmentOptions {
    fn default() -> Self {
        SegmentOptions {
            stability: StabilityOptions::default(),
            s_depth: 3,
            omega_depth: 6,
        }
    }
}

fn real_picture(b: &Block<Interval>) -> IntervalMatrix {
    let h = hermitian(b);
    match b.kind {
        BlockKind::P => h.map(|z| z.re),
        BlockKind::Q => h.realified(),
    }
}

fn invertible_on(cert: &BranchCertificate, s: Interval, pivot: Pivot) -> Result<bool, StabilityError> {
    let u = cert.generators(s);
    let (_, blocks) = blocks_at(&cert.shape(), &u, cert.omega_at(s), false, Some(pivot))?;
    Ok(blocks
        .iter()
        .filter(|b| b.size() > 0)
        .all(|b| verify_invertible(&real_picture(b)).is_ok()))
}

/// Tight generator enclosure at `x0`, falling back to the tube at `s = 0`.
fn start_enclosure(cert: &BranchCertificate) -> Vec<V3<Interval>> {
    let n = cert.n;
    match nk_validate_point(cert.shape(), &cert.x0, &cert.anchor, &NKOptions::default()) {
        Ok(v) => {
            let e = v.enclosure();
            (0..n).map(|j| [e[3 * j], e[3 * j + 1], e[3 * j + 2]]).collect()
        }
        Err(_) => cert.generators(Interval::point(0.0)),
    }
}

pub fn stability_over_segment(
    cert: &BranchCertificate,
    opts: &SegmentOptions,
) -> Result<SegmentStability, StabilityError> {
    let shape = cert.shape();
    let u0 = start_enclosure(cert);
    let start = stability_test_with_pivot(&shape, &u0, Interval::point(cert.x0.omega), None, &opts.stability)?;
    let mut out = SegmentStability {
        omega: cert.omega,
        propagated: false,
        pieces: 0,
        reason: None,
        start,
    };
    if cert.status != "validated" {
        out.reason = Some("existence along the segment is not certified".into());
        out.start.verdict = Verdict::Inconclusive("segment existence is not certified".into());
        return Ok(out);
    }
    if !out.start.is_stable() {
        out.reason = Some("not certified stable at the start of the segment".into());
        return Ok(out);
    }
    if cert.is_point() {
        out.propagated = true;
        out.pieces = 1;
        return Ok(out);
    }
    if cert.x0.omega == 0.0 || cert.omega_at(Interval::new(0.0, 1.0)).contains_zero() {
        out.reason = Some("segment meets an equilibrium, where the blocks are singular".into());
        return Ok(out);
    }
    match propagate(cert, out.start.pivot, opts.omega_depth, opts)? {
        Ok(pieces) => {
            out.pieces = pieces;
            out.propagated = true;
        }
        Err(reason) => out.reason = Some(reason),
    }
    Ok(out)
}

/// Number of tube pieces verified, or the reason of failure.
fn propagate(
    cert: &BranchCertificate,
    pivot: Pivot,
    omega_depth: u32,
    opts: &SegmentOptions,
) -> Result<Result<usize, String>, StabilityError> {
    let mut pieces = 0;
    let mut stack = vec![(0.0f64, 1.0f64, 0u32)];
    let mut failed = None;
    while let Some((a, b, depth)) = stack.pop() {
        if invertible_on(cert, Interval::new(a, b), pivot)? {
            pieces += 1;
            continue;
        }
        if depth >= opts.s_depth {
            failed = Some(format!(
                "a block is not verified invertible for omega in [{}, {}]",
                cert.omega_at(Interval::point(a)).mid(),
                cert.omega_at(Interval::point(b)).mid()
            ));
            break;
        }
        let mid = 0.5 * (a + b);
        stack.push((mid, b, depth + 1));
        stack.push((a, mid, depth + 1));
    }
    let Some(reason) = failed else {
        return Ok(Ok(pieces));
    };
    if omega_depth == 0 {
        return Ok(Err(reason));
    }
    let Some((left, right)) = halves(cert) else {
        return Ok(Err(reason));
    };
    let mut total = 0;
    for half in [left, right] {
        match propagate(&half, pivot, omega_depth - 1, opts)? {
            Ok(k) => total += k,
            Err(r) => return Ok(Err(r)),
        }
    }
    Ok(Ok(total))
}

/// The two halves of `cert` in omega, each re-validated with the same
/// anchor; they share the polished midpoint.
fn halves(cert: &BranchCertificate) -> Option<(BranchCertificate, BranchCertificate)> {
    let shape = cert.shape();
    let mid = 0.5 * (cert.x0.omega + cert.x1.omega);
    let v: Vec<f64> = cert.x0.to_vec().iter().zip(cert.x1.to_vec()).map(|(a, b)| 0.5 * (a + b)).collect();
    let guess = AugmentedPoint::from_vec(&v, mid).ok()?;
    let xm = newton_polish(shape, &guess, &cert.anchor, mid).ok()?;
    let opts = NKOptions::default();
    let left = nk_validate_segment(shape, &cert.x0, &xm, &cert.anchor, &opts).ok()?;
    let right = nk_validate_segment(shape, &xm, &cert.x1, &cert.anchor, &opts).ok()?;
    Some((left, right))
}
