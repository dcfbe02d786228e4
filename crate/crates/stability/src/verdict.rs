//! Stability verdicts at a certified relative equilibrium.

use interval_core::{ComplexIntervalMatrix, Interval};
use serde_json::{json, Value};
use vortex_model::vec3::V3;
use vortex_model::RingShape;

use crate::blocks::{blocks_at, hermitian};
use crate::slice::{Pivot, SliceCase};
use crate::spectrum::{block_spectrum, BlockSpectrum, BlockStatus, SpectrumOptions};
use crate::StabilityError;

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// Every block is positive definite, up to the forced kernel at `mu = 0`.
    CertifiedStable,
    /// The sufficient condition fails: block `block` has a certified
    /// negative eigenvalue in `witness`.
    NotPositive { block: String, witness: Interval },
    Inconclusive(String),
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::CertifiedStable => "CertifiedStable",
            Verdict::NotPositive { .. } => "NotPositive",
            Verdict::Inconclusive(_) => "Inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct StabilityVerdict {
    pub omega: Interval,
    pub mu: Interval,
    pub case: SliceCase,
    pub pivot: Pivot,
    pub blocks: Vec<BlockSpectrum>,
    pub verdict: Verdict,
}

impl StabilityVerdict {
    pub fn is_stable(&self) -> bool {
        self.verdict == Verdict::CertifiedStable
    }

    pub fn to_json(&self) -> Value {
        let pair = |x: Interval| json!([x.lo(), x.hi()]);
        let cluster = |c: &crate::Cluster| json!({"center": c.center(), "halfwidth": c.half_width(), "count": c.count});
        let blocks: Vec<Value> = self
            .blocks
            .iter()
            .map(|b| {
                let mut v = json!({
                    "l": b.l,
                    "kind": b.kind.label(),
                    "size": b.size,
                    "eigs": b.eigs.iter().map(|&e| pair(e)).collect::<Vec<_>>(),
                    "clusters": b.clusters.iter().map(cluster).collect::<Vec<_>>(),
                });
                if let Some(k) = &b.kernel {
                    v["kernel"] = cluster(k);
                }
                v
            })
            .collect();
        let mut out = json!({
            "omega": pair(self.omega),
            "mu": pair(self.mu),
            "blocks": blocks,
            "verdict": self.verdict.label(),
        });
        match &self.verdict {
            Verdict::NotPositive { block, witness } => {
                out["witness"] = json!({"block": block, "eig": pair(*witness)});
            }
            Verdict::Inconclusive(reason) => out["reason"] = json!(reason),
            Verdict::CertifiedStable => {}
        }
        out
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct StabilityOptions {
    pub spectrum: SpectrumOptions,
    /// Validate blocks on separate threads.
    pub parallel: bool,
}

fn spectra(
    matrices: &[(usize, crate::BlockKind, ComplexIntervalMatrix, usize)],
    opts: &StabilityOptions,
) -> Vec<BlockSpectrum> {
    let one = |(l, kind, m, kernel): &(usize, crate::BlockKind, ComplexIntervalMatrix, usize)| {
        block_spectrum(m, *l, *kind, *kernel, &opts.spectrum)
    };
    if !opts.parallel || matrices.len() < 2 {
        return matrices.iter().map(one).collect();
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = matrices.iter().map(|b| s.spawn(move || one(b))).collect();
        handles.into_iter().map(|h| h.join().expect("block validation panicked")).collect()
    })
}

/// Verdict at the relative equilibrium with generators in `u` rotating at
/// `omega`; `omega = 0` exactly selects the equilibrium case.
pub fn stability_test(
    shape: &RingShape,
    u: &[V3<Interval>],
    omega: Interval,
    opts: &StabilityOptions,
) -> Result<StabilityVerdict, StabilityError> {
    stability_test_with_pivot(shape, u, omega, None, opts)
}

pub fn stability_test_with_pivot(
    shape: &RingShape,
    u: &[V3<Interval>],
    omega: Interval,
    pivot: Option<Pivot>,
    opts: &StabilityOptions,
) -> Result<StabilityVerdict, StabilityError> {
    let equilibrium = omega.lo() == 0.0 && omega.hi() == 0.0;
    let (slice, blocks) = blocks_at(shape, u, omega, equilibrium, pivot)?;
    let mu = shape.mu(u);
    let kernel = slice.kernel();
    let matrices: Vec<_> = blocks
        .iter()
        .map(|b| {
            let k = match kernel {
                Some((l, count)) if l == b.l => count,
                _ => 0,
            };
            (b.l, b.kind, hermitian(b), k)
        })
        .collect();
    let spectra = spectra(&matrices, opts);
    let verdict = if !equilibrium && omega.contains_zero() {
        Verdict::Inconclusive("angular velocity enclosure contains zero".into())
    } else {
        decide(&spectra)
    };
    Ok(StabilityVerdict {
        omega,
        mu,
        case: slice.case,
        pivot: slice.pivot,
        blocks: spectra,
        verdict,
    })
}

fn decide(spectra: &[BlockSpectrum]) -> Verdict {
    let mut unresolved = Vec::new();
    for b in spectra {
        match b.status() {
            BlockStatus::Negative { witness } => {
                return Verdict::NotPositive {
                    block: format!("{}{}", b.kind.label(), b.l),
                    witness,
                }
            }
            BlockStatus::Unresolved(reason) => unresolved.push(reason),
            BlockStatus::PositiveDefinite => {}
        }
    }
    if unresolved.is_empty() {
        Verdict::CertifiedStable
    } else {
        Verdict::Inconclusive(unresolved.join("; "))
    }
}
