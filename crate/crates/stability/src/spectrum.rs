//! Complete certified accounting of a Hermitian block's spectrum: simple
//! validated eigenvalues plus winding-counted clusters.

use interval_core::{ComplexIntervalMatrix, Interval};

use crate::eigen::{float_eigen, validate_simple_eigenpair};
use crate::slice::BlockKind;
use crate::winding::{count_eigenvalues_winding_with, WindingOptions};

#[derive(Clone, Copy, Debug)]
pub struct SpectrumOptions {
    /// Half-width of the window around 0 holding a forced kernel.
    pub kernel_window: f64,
    pub cluster_eps0: f64,
    pub cluster_eps_max: f64,
    pub winding: WindingOptions,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            kernel_window: 1e-8,
            cluster_eps0: 1e-6,
            cluster_eps_max: 1e-2,
            winding: WindingOptions::default(),
        }
    }
}

/// Certified count of eigenvalues in `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cluster {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Cluster {
    pub fn center(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn half_width(&self) -> f64 {
        0.5 * (self.hi - self.lo)
    }
}

#[derive(Clone, Debug)]
pub enum BlockStatus {
    PositiveDefinite,
    /// A certified negative eigenvalue lies in `witness`.
    Negative { witness: Interval },
    Unresolved(String),
}

#[derive(Clone, Debug)]
pub struct BlockSpectrum {
    pub l: usize,
    pub kind: BlockKind,
    pub size: usize,
    /// Validated simple eigenvalues, ascending.
    pub eigs: Vec<Interval>,
    pub clusters: Vec<Cluster>,
    /// Window around 0 and its count, when a kernel is expected.
    pub kernel: Option<Cluster>,
    pub expected_kernel: usize,
    /// Regions are pairwise disjoint and their counts add up to `size`.
    pub complete: bool,
    pub notes: Vec<String>,
}

impl BlockSpectrum {
    pub fn status(&self) -> BlockStatus {
        if let Some(e) = self.eigs.iter().find(|e| e.is_neg()) {
            return BlockStatus::Negative { witness: *e };
        }
        if let Some(c) = self.clusters.iter().find(|c| c.count > 0 && c.hi < 0.0) {
            return BlockStatus::Negative {
                witness: Interval::new(c.lo, c.hi),
            };
        }
        if !self.complete {
            return BlockStatus::Unresolved(format!("spectrum of block {}{} not fully accounted", self.kind.label(), self.l));
        }
        if let Some(e) = self.eigs.iter().find(|e| !e.is_pos()) {
            return BlockStatus::Unresolved(format!(
                "eigenvalue enclosure [{:e}, {:e}] of block {}{} meets zero",
                e.lo(),
                e.hi(),
                self.kind.label(),
                self.l
            ));
        }
        if let Some(c) = self.clusters.iter().find(|c| c.count > 0 && !(c.lo > 0.0)) {
            return BlockStatus::Unresolved(format!(
                "cluster window [{:e}, {:e}] of block {}{} meets zero",
                c.lo,
                c.hi,
                self.kind.label(),
                self.l
            ));
        }
        match self.kernel {
            Some(k) if k.count != self.expected_kernel => BlockStatus::Unresolved(format!(
                "{} eigenvalues within {:e} of zero in block {}{}, expected {}",
                k.count,
                k.half_width(),
                self.kind.label(),
                self.l,
                self.expected_kernel
            )),
            _ => BlockStatus::PositiveDefinite,
        }
    }

    /// Lower bound of the spectrum outside the kernel window.
    pub fn lower_bound(&self) -> f64 {
        let e = self.eigs.iter().map(|e| e.lo());
        let c = self.clusters.iter().filter(|c| c.count > 0).map(|c| c.lo);
        e.chain(c).fold(f64::INFINITY, f64::min)
    }
}

enum Region {
    Simple(Interval),
    Window(Cluster),
}

impl Region {
    fn bounds(&self) -> (f64, f64) {
        match self {
            Region::Simple(e) => (e.lo(), e.hi()),
            Region::Window(c) => (c.lo, c.hi),
        }
    }

    fn count(&self) -> usize {
        match self {
            Region::Simple(_) => 1,
            Region::Window(c) => c.count,
        }
    }
}

/// Winding count on a window around `[a, b]`, widened from `eps0` by
/// factors of ten up to `eps_max`.
fn cluster_window(m: &ComplexIntervalMatrix, a: f64, b: f64, eps0: f64, eps_max: f64, opts: &SpectrumOptions) -> Option<Cluster> {
    let mut eps = eps0;
    while eps <= eps_max * (1.0 + 1e-9) {
        let (lo, hi) = (a - eps, b + eps);
        if let Ok(count) = count_eigenvalues_winding_with(m, lo, hi, opts.winding) {
            return Some(Cluster { lo, hi, count });
        }
        eps *= 10.0;
    }
    None
}

/// Certified spectrum of the Hermitian interval block `m`; `kernel` is the
/// number of eigenvalues expected near zero.
pub fn block_spectrum(
    m: &ComplexIntervalMatrix,
    l: usize,
    kind: BlockKind,
    kernel: usize,
    opts: &SpectrumOptions,
) -> BlockSpectrum {
    let size = m.rows();
    let mut out = BlockSpectrum {
        l,
        kind,
        size,
        eigs: Vec::new(),
        clusters: Vec::new(),
        kernel: None,
        expected_kernel: kernel,
        complete: false,
        notes: Vec::new(),
    };
    if size == 0 {
        out.complete = true;
        return out;
    }
    let pairs = float_eigen(&m.mid());
    let mut regions: Vec<Region> = Vec::new();
    let mut pending: Vec<f64> = Vec::new();
    let near_kernel = |x: f64| kernel > 0 && x.abs() < opts.kernel_window;
    for (lambda, v) in &pairs {
        if near_kernel(*lambda) {
            continue;
        }
        match validate_simple_eigenpair(m, *lambda, v) {
            Ok(e) => regions.push(Region::Simple(e.value)),
            Err(_) => pending.push(*lambda),
        }
    }
    if kernel > 0 {
        let w = opts.kernel_window;
        match cluster_window(m, 0.0, 0.0, w, w.max(opts.cluster_eps_max), opts) {
            Some(c) => {
                out.kernel = Some(c);
                regions.push(Region::Window(c));
            }
            None => out.notes.push("no certified count around zero".into()),
        }
    }
    let mut groups: Vec<(f64, f64)> = Vec::new();
    for x in pending {
        match groups.last_mut() {
            Some(g) if x - g.1 <= opts.cluster_eps_max => g.1 = x,
            _ => groups.push((x, x)),
        }
    }
    for (a, b) in groups {
        match cluster_window(m, a, b, opts.cluster_eps0, opts.cluster_eps_max, opts) {
            Some(c) => {
                out.clusters.push(c);
                regions.push(Region::Window(c));
            }
            None => out.notes.push(format!("no certified count around [{a:e}, {b:e}]")),
        }
    }
    // A window counts everything inside it, so simple enclosures it
    // contains are already accounted for.
    let windows: Vec<Cluster> = regions
        .iter()
        .filter_map(|r| match r {
            Region::Window(c) => Some(*c),
            _ => None,
        })
        .collect();
    regions.retain(|r| match r {
        Region::Simple(e) => !windows.iter().any(|c| c.lo < e.lo() && e.hi() < c.hi),
        _ => true,
    });
    regions.sort_by(|a, b| a.bounds().0.total_cmp(&b.bounds().0));
    let disjoint = regions.windows(2).all(|w| w[0].bounds().1 < w[1].bounds().0);
    let total: usize = regions.iter().map(Region::count).sum();
    out.complete = out.notes.is_empty() && disjoint && total == size;
    if !disjoint {
        out.notes.push("overlapping spectral regions".into());
    } else if total != size {
        out.notes.push(format!("{total} eigenvalues accounted for out of {size}"));
    }
    out.eigs = regions
        .iter()
        .filter_map(|r| match r {
            Region::Simple(e) => Some(*e),
            _ => None,
        })
        .collect();
    out
}
