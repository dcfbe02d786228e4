//! Rigorous nonlinear stability of relative equilibria through the
//! isotypic block decomposition of `d^2 H*` on a symplectic slice.

mod blocks;
mod eigen;
mod error;
mod segment;
mod slice;
mod spectrum;
mod verdict;
mod winding;

pub use blocks::{assemble_blocks, blocks_at, full_hessian, hermitian, inner, restrict, Block};
pub use error::StabilityError;
pub use slice::{
    axis_generator, build_slice, choose_pivot, combine, complexify, hat_b, hat_c, im_part, momentum_derivative, pole_xy,
    re_part,
    rotation_generator, tangency_defect, BlockBasis, BlockKind, CVec, Pivot, SliceBasis, SliceCase,
};
pub use eigen::{float_eigen, validate_simple_eigenpair, EigenEnclosure, MAX_CONDITION};
pub use winding::{count_eigenvalues_winding, count_eigenvalues_winding_with, WindingOptions};
pub use segment::{stability_over_segment, SegmentOptions, SegmentStability};
pub use spectrum::{block_spectrum, BlockSpectrum, BlockStatus, Cluster, SpectrumOptions};
pub use verdict::{stability_test, stability_test_with_pivot, StabilityOptions, StabilityVerdict, Verdict};
