//! Restriction of the full Hessian of `H*` to the slice blocks.

use interval_core::{ComplexInterval, Cx, Interval, Mat, Ring, Scalar};
use vortex_model::vec3::V3;
use vortex_model::{full_hstar_hessian, HamiltonianScale, RingShape};

use crate::slice::{build_slice, BlockKind, CVec, Pivot, SliceBasis};
use crate::StabilityError;

#[derive(Clone, Debug)]
pub struct Block<S> {
    pub l: usize,
    pub kind: BlockKind,
    /// `W^* H W` for the basis columns `W`.
    pub matrix: Mat<Cx<S>>,
}

impl<S: Scalar> Block<S> {
    pub fn size(&self) -> usize {
        self.matrix.rows()
    }
}

/// `d^2 H*_omega(a)` on `(R^3)^N`.
pub fn full_hessian<S: Scalar>(a: &[V3<S>], omega: S) -> Mat<S> {
    full_hstar_hessian(a, omega, HamiltonianScale::Half).hessian
}

fn apply<S: Scalar>(h: &Mat<S>, w: &CVec<S>) -> CVec<S> {
    (0..h.rows())
        .map(|i| {
            h.row(i)
                .iter()
                .zip(w)
                .fold(Cx::zero(), |acc, (&hij, wj)| acc + wj.scale(hij))
        })
        .collect()
}

/// `<v, w> = sum conj(v_t) w_t`.
pub fn inner<S: Scalar>(v: &[Cx<S>], w: &[Cx<S>]) -> Cx<S> {
    v.iter().zip(w).fold(Cx::zero(), |acc, (a, b)| acc + a.conj() * *b)
}

/// `W^* H W`.
pub fn restrict<S: Scalar>(h: &Mat<S>, columns: &[CVec<S>]) -> Mat<Cx<S>> {
    let hw: Vec<CVec<S>> = columns.iter().map(|w| apply(h, w)).collect();
    Mat::from_fn(columns.len(), columns.len(), |i, k| inner(&columns[i], &hw[k]))
}

pub fn assemble_blocks<S: Scalar>(slice: &SliceBasis<S>, hessian: &Mat<S>) -> Vec<Block<S>> {
    slice
        .blocks
        .iter()
        .map(|b| Block {
            l: b.l,
            kind: b.kind,
            matrix: restrict(hessian, &b.columns),
        })
        .collect()
}

/// Slice bases and blocks at generators `u` and angular velocity `omega`.
pub fn blocks_at<S: Scalar>(
    shape: &RingShape,
    u: &[V3<S>],
    omega: S,
    equilibrium: bool,
    pivot: Option<Pivot>,
) -> Result<(SliceBasis<S>, Vec<Block<S>>), StabilityError> {
    let slice = build_slice(shape, u, equilibrium, pivot)?;
    let h = full_hessian(&slice.config, omega);
    let blocks = assemble_blocks(&slice, &h);
    Ok((slice, blocks))
}

/// Hermitian part of an interval block, as used by every spectral routine.
pub fn hermitian(block: &Block<Interval>) -> Mat<ComplexInterval> {
    block.matrix.hermitized()
}
