//! Bases of the symplectic slice `N` split into isotypic blocks.
//!
//! Ring `j` occupies slots `j*m .. j*m + m`, slot `j*m + k - 1` holding
//! `a_{j,k} = g^k u_j`; poles follow, North first.

use interval_core::{Cx, Ring, Scalar};
use vortex_model::vec3::{cross, dot, j3, V3};
use vortex_model::RingShape;

use crate::StabilityError;

pub type CVec<S> = Vec<Cx<S>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    /// Real block on a real subspace.
    P,
    /// Complex block, its real picture being two identical copies.
    Q,
}

impl BlockKind {
    pub fn label(self) -> &'static str {
        match self {
            BlockKind::P => "P",
            BlockKind::Q => "Q",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SliceCase {
    /// `mu != 0` with `m >= 2`.
    Symmetric,
    /// `mu != 0`, no symmetry beyond the identity.
    Asymmetric,
    /// Equilibrium (`mu = 0`): the same bases, with a forced kernel of
    /// real dimension two.
    Equilibrium,
}

/// Which generators carry the special role in the basis formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pivot {
    /// Index of the ring playing the part of ring 1.
    Ring(usize),
    /// Indices of the two points playing `a_1`, `a_2` when `m = 1`.
    Pair(usize, usize),
}

#[derive(Clone, Debug)]
pub struct BlockBasis<S> {
    pub l: usize,
    pub kind: BlockKind,
    pub columns: Vec<CVec<S>>,
}

#[derive(Clone, Debug)]
pub struct SliceBasis<S> {
    pub case: SliceCase,
    pub shape: RingShape,
    pub pivot: Pivot,
    /// Lifted configuration `a`.
    pub config: Vec<V3<S>>,
    pub blocks: Vec<BlockBasis<S>>,
}

impl<S: Scalar> SliceBasis<S> {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.columns.len()).sum()
    }

    /// Dimension of the kernel of `d^2 H*` forced by a zero momentum, counted
    /// in the block that carries it: `(l, count)`.
    pub fn kernel(&self) -> Option<(usize, usize)> {
        match self.case {
            SliceCase::Equilibrium if self.shape.m == 1 => Some((0, 2)),
            SliceCase::Equilibrium if self.shape.m == 2 => Some((1, 2)),
            SliceCase::Equilibrium => Some((1, 1)),
            _ => None,
        }
    }
}

/// Chooses the pivot from float midpoints of the generators.
pub fn choose_pivot<S: Scalar>(shape: &RingShape, u: &[V3<S>]) -> Result<Pivot, StabilityError> {
    let mid: Vec<[f64; 3]> = u.iter().map(|v| [v[0].mid(), v[1].mid(), v[2].mid()]).collect();
    let rho2 = |v: &[f64; 3]| v[0] * v[0] + v[1] * v[1];
    if shape.n == 0 {
        return Err(StabilityError::SliceConstruction("no ring".into()));
    }
    if shape.m >= 2 {
        let score = |v: &[f64; 3]| if shape.m == 2 { v[2].abs() * rho2(v) } else { rho2(v) };
        let best = (0..shape.n)
            .max_by(|&i, &j| score(&mid[i]).total_cmp(&score(&mid[j])))
            .unwrap_or(0);
        if score(&mid[best]) <= 1e-10 {
            return Err(StabilityError::SliceConstruction(if shape.m == 2 {
                "every ring of a two-fold configuration lies on the equator or at a pole".into()
            } else {
                "every ring collapses to a pole".into()
            }));
        }
        return Ok(Pivot::Ring(best));
    }
    if shape.n < 3 {
        return Err(StabilityError::SliceConstruction("fewer than three non-polar points".into()));
    }
    let mut best = (0, 1, -1.0);
    for i in 0..shape.n {
        for j in 0..shape.n {
            if i != j {
                let b = [-mid[j][1], mid[j][0], 0.0];
                let s = (mid[i][0] * b[0] + mid[i][1] * b[1]).abs();
                if s > best.2 {
                    best = (i, j, s);
                }
            }
        }
    }
    if best.2 <= 1e-10 {
        return Err(StabilityError::SliceConstruction("all points lie on one meridian plane".into()));
    }
    Ok(Pivot::Pair(best.0, best.1))
}

/// Builds the block bases at generators `u`; `pivot` is chosen from `u`
/// unless given, so that a family of configurations can share it.
pub fn build_slice<S: Scalar>(
    shape: &RingShape,
    u: &[V3<S>],
    equilibrium: bool,
    pivot: Option<Pivot>,
) -> Result<SliceBasis<S>, StabilityError> {
    if u.len() != shape.n {
        return Err(StabilityError::SliceConstruction(format!(
            "expected {} generators, got {}",
            shape.n,
            u.len()
        )));
    }
    let pivot = match pivot {
        Some(p) => p,
        None => choose_pivot(shape, u)?,
    };
    let config = shape.lift(u);
    let rings = Rings { shape: *shape, a: &config };
    let blocks = match (shape.m, pivot) {
        (1, Pivot::Pair(i1, i2)) => vec![rings.asymmetric(i1, i2)],
        (m, Pivot::Ring(r)) if m >= 2 => rings.symmetric(r),
        _ => return Err(StabilityError::SliceConstruction("pivot does not match the symmetry".into())),
    };
    let case = if equilibrium {
        SliceCase::Equilibrium
    } else if shape.m == 1 {
        SliceCase::Asymmetric
    } else {
        SliceCase::Symmetric
    };
    Ok(SliceBasis {
        case,
        shape: *shape,
        pivot,
        config,
        blocks,
    })
}

pub fn re_part<S: Scalar>(w: &[Cx<S>]) -> CVec<S> {
    w.iter().map(|c| Cx::real(c.re)).collect()
}

pub fn im_part<S: Scalar>(w: &[Cx<S>]) -> CVec<S> {
    w.iter().map(|c| Cx::real(c.im)).collect()
}

/// `sum_k c_k w_k`.
pub fn combine<S: Scalar>(terms: &[(Cx<S>, &CVec<S>)]) -> CVec<S> {
    let len = terms[0].1.len();
    (0..len)
        .map(|t| terms.iter().fold(Cx::zero(), |acc, (c, w)| acc + *c * w[t]))
        .collect()
}

/// Real vector in `(R^3)^N` as a complex one.
pub fn complexify<S: Scalar>(v: &[V3<S>]) -> CVec<S> {
    v.iter().flat_map(|x| x.iter().map(|&c| Cx::real(c))).collect()
}

struct Rings<'a, S> {
    shape: RingShape,
    a: &'a [V3<S>],
}

impl<S: Scalar> Rings<'_, S> {
    fn len(&self) -> usize {
        3 * self.a.len()
    }

    fn slot(&self, j: usize, k: usize) -> usize {
        j * self.shape.m + (k - 1)
    }

    fn u(&self, j: usize) -> V3<S> {
        self.a[self.slot(j, self.shape.m)]
    }

    fn z(&self, j: usize) -> Cx<S> {
        Cx::real(self.u(j)[2])
    }

    /// `eta_j = x_j - i y_j`.
    fn eta(&self, j: usize) -> Cx<S> {
        let u = self.u(j);
        Cx::new(u[0], -u[1])
    }

    fn put(&self, w: &mut CVec<S>, slot: usize, c: Cx<S>, v: V3<S>) {
        for i in 0..3 {
            w[3 * slot + i] = w[3 * slot + i] + c * Cx::real(v[i]);
        }
    }

    fn zeros(&self) -> CVec<S> {
        vec![Cx::zero(); self.len()]
    }

    /// `sum_k e^{i l k zeta} f(a_{j,k})` placed at the ring slots.
    fn hat(&self, j: usize, l: usize, f: impl Fn(V3<S>) -> V3<S>) -> CVec<S> {
        let m = self.shape.m;
        let mut w = self.zeros();
        for k in 1..=m {
            let s = self.slot(j, k);
            self.put(&mut w, s, Cx::turn((l * k) as i64, m as i64), f(self.a[s]));
        }
        w
    }

    fn hat_b(&self, j: usize, l: usize) -> CVec<S> {
        self.hat(j, l, j3)
    }

    fn hat_c(&self, j: usize, l: usize) -> CVec<S> {
        self.hat(j, l, |a| cross(j3(a), a))
    }

    /// `delta x_s + i delta y_s` at pole `s`.
    fn pole_xy(&self, s: usize) -> CVec<S> {
        let mut w = self.zeros();
        let slot = self.shape.m * self.shape.n + s;
        w[3 * slot] = Cx::one();
        w[3 * slot + 1] = Cx::i();
        w
    }

    fn pole_axis(&self, s: usize, axis: usize) -> CVec<S> {
        let mut w = self.zeros();
        w[3 * (self.shape.m * self.shape.n + s) + axis] = Cx::one();
        w
    }

    fn others(&self, r: usize) -> impl Iterator<Item = usize> {
        (0..self.shape.n).filter(move |&j| j != r)
    }

    fn symmetric(&self, r: usize) -> Vec<BlockBasis<S>> {
        let m = self.shape.m;
        let mut blocks = vec![BlockBasis {
            l: 0,
            kind: BlockKind::P,
            columns: self.u0(r),
        }];
        if m == 2 {
            blocks.push(BlockBasis {
                l: 1,
                kind: BlockKind::P,
                columns: self.u1_two_fold(r),
            });
            return blocks;
        }
        blocks.push(BlockBasis {
            l: 1,
            kind: BlockKind::Q,
            columns: self.u1(r),
        });
        for l in 2..m {
            if 2 * l < m {
                blocks.push(BlockBasis {
                    l,
                    kind: BlockKind::Q,
                    columns: self.ring_columns(l),
                });
            } else if 2 * l == m {
                let columns = self.ring_columns(l).iter().map(|w| re_part(w)).collect();
                blocks.push(BlockBasis {
                    l,
                    kind: BlockKind::P,
                    columns,
                });
            }
        }
        blocks
    }

    fn u0(&self, r: usize) -> Vec<CVec<S>> {
        let e1 = self.eta(r).norm_sqr();
        let c1 = self.hat_c(r, 0);
        let mut cols = Vec::new();
        for j in self.others(r) {
            cols.push(self.hat_b(j, 0));
            let ej = self.eta(j).norm_sqr();
            cols.push(combine(&[(Cx::real(e1), &self.hat_c(j, 0)), (Cx::real(-ej), &c1)]));
        }
        cols
    }

    fn u1(&self, r: usize) -> Vec<CVec<S>> {
        let m = S::from_int(self.shape.m as i64);
        let i = Cx::<S>::i();
        let (b1, c1) = (self.hat_b(r, 1), self.hat_c(r, 1));
        let eta1 = self.eta(r);
        let mut cols = vec![combine(&[(self.z(r), &b1), (i, &c1)])];
        for j in self.others(r) {
            cols.push(combine(&[(self.eta(j), &b1), (-eta1, &self.hat_b(j, 1))]));
            cols.push(combine(&[(self.z(j) * self.eta(j), &b1), (i * eta1, &self.hat_c(j, 1))]));
        }
        for s in 0..self.shape.p {
            let two = Cx::real(S::from_f64(2.0));
            cols.push(combine(&[(two, &b1), (i * eta1.scale(m), &self.pole_xy(s))]));
        }
        cols
    }

    fn u1_two_fold(&self, r: usize) -> Vec<CVec<S>> {
        let (b1, c1) = (self.hat_b(r, 1), self.hat_c(r, 1));
        let eta1 = self.eta(r);
        let z1 = self.u(r)[2];
        let e1 = eta1.norm_sqr();
        let re = Cx::real;
        let mut cols = Vec::new();
        for j in self.others(r) {
            let p = eta1 * self.eta(j).conj();
            let zj = self.u(j)[2];
            cols.push(combine(&[
                (re(z1 * p.re), &b1),
                (re(-(z1 * e1)), &self.hat_b(j, 1)),
                (re(-p.im), &c1),
            ]));
            cols.push(combine(&[
                (re(z1 * zj * p.im), &b1),
                (re(-(z1 * e1)), &self.hat_c(j, 1)),
                (re(zj * p.re), &c1),
            ]));
        }
        let two = S::from_f64(2.0);
        for s in 0..self.shape.p {
            cols.push(combine(&[
                (re(z1 * eta1.im), &b1),
                (re(eta1.re), &c1),
                (re(-(two * z1 * e1)), &self.pole_axis(s, 0)),
            ]));
            cols.push(combine(&[
                (re(z1 * eta1.re), &b1),
                (re(-eta1.im), &c1),
                (re(-(two * z1 * e1)), &self.pole_axis(s, 1)),
            ]));
        }
        cols
    }

    fn ring_columns(&self, l: usize) -> Vec<CVec<S>> {
        (0..self.shape.n)
            .flat_map(|j| [self.hat_b(j, l), self.hat_c(j, l)])
            .collect()
    }

    fn asymmetric(&self, i1: usize, i2: usize) -> BlockBasis<S> {
        let n = self.a.len();
        let polar = |j: usize| j >= self.shape.n || (self.a[j][0].mid() == 0.0 && self.a[j][1].mid() == 0.0);
        let b = |j: usize| {
            if polar(j) {
                // e1 projected on the tangent plane, e1 itself at an exact pole
                let a = self.a[j];
                [S::one() - a[0] * a[0], -(a[0] * a[1]), -(a[0] * a[2])]
            } else {
                j3(self.a[j])
            }
        };
        let c = |j: usize| cross(self.a[j], b(j));
        let a1 = self.a[i1];
        let b2 = b(i2);
        let a1b2 = Cx::real(dot(a1, b2));
        let others: Vec<usize> = (0..n).filter(|&j| j != i1 && j != i2).collect();
        let one = Cx::<S>::one();
        let column = |x: V3<S>| {
            let mut w = self.zeros();
            self.put(&mut w, i1, one, cross(a1, cross(b2, x)));
            self.put(&mut w, i2, -Cx::real(dot(a1, x)), b2);
            w
        };
        let mut cols = Vec::with_capacity(2 * n - 4);
        let g = cross(a1, cross(b2, c(i2)));
        let mut w = self.zeros();
        self.put(&mut w, i1, one, g);
        self.put(&mut w, i2, -one, g);
        cols.push(w);
        for &o in &others[1..] {
            let mut w = column(b(o));
            self.put(&mut w, o, a1b2, b(o));
            cols.push(w);
        }
        for &o in &others {
            let mut w = column(c(o));
            self.put(&mut w, o, a1b2, c(o));
            cols.push(w);
        }
        BlockBasis {
            l: 0,
            kind: BlockKind::P,
            columns: cols,
        }
    }
}

/// `hat B_{j,l}` for the lifted configuration `a`.
pub fn hat_b<S: Scalar>(shape: &RingShape, a: &[V3<S>], j: usize, l: usize) -> CVec<S> {
    Rings { shape: *shape, a }.hat_b(j, l)
}

/// `hat C_{j,l}` for the lifted configuration `a`.
pub fn hat_c<S: Scalar>(shape: &RingShape, a: &[V3<S>], j: usize, l: usize) -> CVec<S> {
    Rings { shape: *shape, a }.hat_c(j, l)
}

/// `delta x_s + i delta y_s` at pole `s`.
pub fn pole_xy<S: Scalar>(shape: &RingShape, a: &[V3<S>], s: usize) -> CVec<S> {
    Rings { shape: *shape, a }.pole_xy(s)
}

/// `s_a = sum_j J3 a_j`, the generator of rotations about the axis.
pub fn axis_generator<S: Scalar>(a: &[V3<S>]) -> CVec<S> {
    complexify(&a.iter().map(|&x| j3(x)).collect::<Vec<_>>())
}

/// `(e_k x a_j)_j` for `k = 0, 1, 2`.
pub fn rotation_generator<S: Scalar>(a: &[V3<S>], k: usize) -> CVec<S> {
    let mut e = [S::zero(); 3];
    e[k] = S::one();
    complexify(&a.iter().map(|&x| cross(e, x)).collect::<Vec<_>>())
}

/// `dPhi w = sum_j w_j`, complex-linear.
pub fn momentum_derivative<S: Scalar>(w: &[Cx<S>]) -> [Cx<S>; 3] {
    let mut out = [Cx::zero(); 3];
    for (t, c) in w.iter().enumerate() {
        out[t % 3] = out[t % 3] + *c;
    }
    out
}

/// `max_j |a_j . w_j|` over the real and imaginary parts.
pub fn tangency_defect<S: Scalar>(a: &[V3<S>], w: &[Cx<S>]) -> f64 {
    a.iter()
        .enumerate()
        .map(|(j, x)| {
            let re = dot(*x, [w[3 * j].re, w[3 * j + 1].re, w[3 * j + 2].re]);
            let im = dot(*x, [w[3 * j].im, w[3 * j + 1].im, w[3 * j + 2].im]);
            re.mag().max(im.mag())
        })
        .fold(0.0, f64::max)
}
