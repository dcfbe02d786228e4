use catalog::{fixture, one_ring_family, OneRing};
use continuation::{continue_branch, nk_validate_point, seed_point, track, NKOptions, StepPolicy};
use interval_core::{ComplexInterval, ComplexIntervalMatrix, Cx, Interval, Mat, Scalar};
use nalgebra::{Complex, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stability::*;
use vortex_model::vec3::V3;
use vortex_model::{RingShape, RingSystem};

fn random_generators(rng: &mut ChaCha8Rng, n: usize) -> Vec<[f64; 3]> {
    (0..n)
        .map(|_| {
            let z: f64 = rng.gen_range(-0.9..0.9);
            let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let r = (1.0 - z * z).sqrt();
            [r * t.cos(), r * t.sin(), z]
        })
        .collect()
}

fn norm(w: &[Cx<f64>]) -> f64 {
    w.iter().map(|c| c.re * c.re + c.im * c.im).sum::<f64>().sqrt()
}

fn apply(h: &Mat<f64>, w: &[Cx<f64>]) -> Vec<Cx<f64>> {
    (0..h.rows())
        .map(|i| {
            let (mut re, mut im) = (0.0, 0.0);
            for (k, c) in w.iter().enumerate() {
                re += h[(i, k)] * c.re;
                im += h[(i, k)] * c.im;
            }
            Cx::new(re, im)
        })
        .collect()
}

fn to_dmatrix(m: &Mat<Cx<f64>>) -> DMatrix<Complex<f64>> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, k| Complex::new(m[(i, k)].re, m[(i, k)].im))
}

fn eigenvalues(m: &Mat<Cx<f64>>) -> Vec<f64> {
    float_eigen(m).into_iter().map(|(l, _)| l).collect()
}

fn point_matrix(rows: &[Vec<(f64, f64)>]) -> ComplexIntervalMatrix {
    Mat::from_fn(rows.len(), rows.len(), |i, k| ComplexInterval::point(rows[i][k].0, rows[i][k].1))
}

fn diag(v: &[f64]) -> ComplexIntervalMatrix {
    Mat::from_fn(v.len(), v.len(), |i, k| ComplexInterval::point(if i == k { v[i] } else { 0.0 }, 0.0))
}

fn exact(u: &[[f64; 3]]) -> Vec<V3<Interval>> {
    u.iter().map(|v| v.map(Interval::point)).collect()
}

/// One-ring generator `(sqrt(1 - z^2), 0, z)` and its angular velocity, both
/// as enclosures.
fn one_ring(kind: OneRing, z: f64) -> (RingShape, Vec<V3<Interval>>, Interval) {
    let zi = Interval::point(z);
    let u = vec![[(Interval::ONE - zi.sqr()).sqrt(), Interval::ZERO, zi]];
    (RingShape::new(kind.m, 1, kind.p).unwrap(), u, kind.omega(zi))
}

fn validated(rs: &RingSystem, omega: f64) -> Vec<V3<Interval>> {
    let x = seed_point(rs, omega).unwrap();
    let v = nk_validate_point(rs.shape, &x, &rs.u, &NKOptions::default()).unwrap();
    let e = v.enclosure();
    (0..rs.shape.n).map(|j| [e[3 * j], e[3 * j + 1], e[3 * j + 2]]).collect()
}

fn block_sizes(m: usize, n: usize, p: usize) -> Vec<(usize, BlockKind, usize)> {
    let shape = RingShape::new(m, n, p).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let u = random_generators(&mut rng, n);
    let s = build_slice(&shape, &u, false, None).unwrap();
    s.blocks.iter().map(|b| (b.l, b.kind, b.columns.len())).collect()
}

#[test]
fn slice_blocks_follow_the_isotypic_table() {
    use BlockKind::{P, Q};
    assert_eq!(block_sizes(4, 2, 0), vec![(0, P, 2), (1, Q, 3), (2, P, 4)]);
    assert_eq!(block_sizes(1, 6, 0), vec![(0, P, 8)]);
    assert_eq!(block_sizes(2, 3, 1), vec![(0, P, 4), (1, P, 6)]);
    assert_eq!(block_sizes(3, 2, 2), vec![(0, P, 2), (1, Q, 5)]);
    assert_eq!(block_sizes(5, 2, 1), vec![(0, P, 2), (1, Q, 4), (2, Q, 4)]);
    assert_eq!(block_sizes(6, 1, 2), vec![(0, P, 0), (1, Q, 3), (2, Q, 2), (3, P, 2)]);
    assert_eq!(block_sizes(7, 1, 0), vec![(0, P, 0), (1, Q, 1), (2, Q, 2), (3, Q, 2)]);
    // 2N - 4 real dimensions, Q blocks counting twice
    for (m, n, p) in [(2, 4, 2), (3, 3, 1), (4, 2, 2), (5, 2, 0), (6, 2, 1), (1, 5, 1)] {
        let total: usize = block_sizes(m, n, p)
            .iter()
            .map(|&(_, k, d)| if k == Q { 2 * d } else { d })
            .sum();
        assert_eq!(total, 2 * (m * n + p) - 4, "m={m} n={n} p={p}");
    }
}

#[test]
fn slice_columns_are_tangent_and_preserve_momentum() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (m, n, p) in [(1, 5, 0), (1, 4, 2), (2, 3, 1), (2, 2, 2), (3, 2, 1), (4, 2, 2), (5, 1, 2), (6, 2, 0)] {
        let shape = RingShape::new(m, n, p).unwrap();
        let u = random_generators(&mut rng, n);
        let s = build_slice(&shape, &u, false, None).unwrap();
        for b in &s.blocks {
            for w in &b.columns {
                assert!(tangency_defect(&s.config, w) <= 1e-12);
                for c in momentum_derivative(w) {
                    assert!(c.re.abs() <= 1e-12 && c.im.abs() <= 1e-12, "m={m} l={} {c:?}", b.l);
                }
            }
        }
    }
}

#[test]
fn momentum_derivatives_of_the_basic_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let close = |a: [Cx<f64>; 3], b: [Cx<f64>; 3]| {
        a.iter()
            .zip(&b)
            .all(|(x, y)| (x.re - y.re).abs() <= 1e-12 && (x.im - y.im).abs() <= 1e-12)
    };
    let zero = [Cx::new(0.0, 0.0); 3];
    for m in 2..=6 {
        let shape = RingShape::new(m, 3, 2).unwrap();
        let u = random_generators(&mut rng, 3);
        let a = shape.lift(&u);
        let mf = m as f64;
        for (j, &[x, y, z]) in u.iter().enumerate() {
            let eta = Cx::new(x, -y);
            let e = |c: Cx<f64>| [c, c * Cx::new(0.0, 1.0), Cx::new(0.0, 0.0)];
            for l in 0..=m / 2 {
                let db = momentum_derivative(&hat_b(&shape, &a, j, l));
                let dc = momentum_derivative(&hat_c(&shape, &a, j, l));
                let (want_b, want_c) = match (l, m) {
                    (0, _) => (zero, [Cx::new(0.0, 0.0), Cx::new(0.0, 0.0), Cx::new(-mf * (x * x + y * y), 0.0)]),
                    (1, 2) => (
                        [Cx::new(-2.0 * y, 0.0), Cx::new(2.0 * x, 0.0), Cx::new(0.0, 0.0)],
                        [Cx::new(2.0 * z * x, 0.0), Cx::new(2.0 * z * y, 0.0), Cx::new(0.0, 0.0)],
                    ),
                    (1, _) => (e(Cx::new(0.0, -mf / 2.0) * eta), e(eta.scale(mf / 2.0 * z))),
                    _ => (zero, zero),
                };
                assert!(close(db, want_b), "B m={m} l={l} {db:?} {want_b:?}");
                assert!(close(dc, want_c), "C m={m} l={l} {dc:?} {want_c:?}");
            }
        }
        for s in 0..2 {
            let d = momentum_derivative(&pole_xy(&shape, &a, s));
            assert!(close(d, [Cx::new(1.0, 0.0), Cx::new(0.0, 1.0), Cx::new(0.0, 0.0)]));
        }
    }
}

#[test]
fn isotypic_blocks_are_orthogonal() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (m, n, p) in [(2, 3, 1), (3, 2, 2), (4, 2, 1), (5, 2, 2), (6, 1, 2), (7, 2, 0)] {
        let shape = RingShape::new(m, n, p).unwrap();
        let u = random_generators(&mut rng, n);
        let s = build_slice(&shape, &u, false, None).unwrap();
        let h = full_hessian(&s.config, rng.gen_range(-1.0..1.0));
        let mut pick = |cols: &[CVec<f64>]| -> CVec<f64> {
            let terms: Vec<(Cx<f64>, &CVec<f64>)> = cols
                .iter()
                .map(|w| (Cx::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)), w))
                .collect();
            combine(&terms)
        };
        let picks: Vec<CVec<f64>> = s
            .blocks
            .iter()
            .filter(|b| !b.columns.is_empty())
            .map(|b| pick(&b.columns))
            .collect();
        for i in 0..picks.len() {
            for k in 0..picks.len() {
                if i == k {
                    continue;
                }
                let hw = apply(&h, &picks[k]);
                let scale = norm(&picks[i]) * norm(&hw);
                let sesq = inner(&picks[i], &hw);
                let conj: Vec<Cx<f64>> = picks[i].iter().map(|c| Cx::new(c.re, -c.im)).collect();
                let bil = inner(&conj, &hw);
                for c in [sesq, bil] {
                    assert!(c.re.hypot(c.im) <= 1e-9 * scale, "m={m} blocks {i},{k}: {c:?} vs {scale}");
                }
            }
        }
    }
}

#[test]
fn real_blocks_double_the_complex_spectrum() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for m in [3, 4, 5] {
        for p in 0..=2 {
            let shape = RingShape::new(m, 2, p).unwrap();
            let u = random_generators(&mut rng, 2);
            let (slice, blocks) = blocks_at(&shape, &u, 0.3, false, None).unwrap();
            let h = full_hessian(&slice.config, 0.3);
            for (basis, block) in slice.blocks.iter().zip(&blocks) {
                if basis.kind != BlockKind::Q {
                    continue;
                }
                let real: Vec<CVec<f64>> = basis
                    .columns
                    .iter()
                    .map(|w| re_part(w))
                    .chain(basis.columns.iter().map(|w| im_part(w)))
                    .map(|w| w.iter().map(|c| c.scale(std::f64::consts::SQRT_2)).collect())
                    .collect();
                let p_block = restrict(&h, &real);
                let doubled: Vec<f64> = eigenvalues(&block.matrix).iter().flat_map(|&l| [l, l]).collect();
                let mut doubled = doubled;
                doubled.sort_by(f64::total_cmp);
                let got = eigenvalues(&p_block);
                let scale = 1.0 + got.iter().fold(0.0f64, |a, x| a.max(x.abs()));
                for (x, y) in got.iter().zip(&doubled) {
                    assert!((x - y).abs() <= 1e-9 * scale, "m={m} l={} {got:?} {doubled:?}", basis.l);
                }
            }
        }
    }
}

#[test]
fn pentagon_with_poles_blocks_match_closed_forms() {
    let shape = RingShape::new(5, 1, 2).unwrap();
    let mut kappa = None;
    for z in [0.1, 0.25, 0.4, 0.6, 0.8] {
        let u = vec![[(1.0f64 - z * z).sqrt(), 0.0, z]];
        let (_, blocks) = blocks_at(&shape, &u, 3.0 * z / (1.0 - z * z), false, None).unwrap();
        for b in &blocks {
            let d = b.size();
            for i in 0..d {
                for k in 0..d {
                    let (x, y) = (b.matrix[(i, k)], b.matrix[(k, i)]);
                    assert!((x.re - y.re).abs() <= 1e-10 && (x.im + y.im).abs() <= 1e-10);
                }
            }
        }
        let q2 = &blocks[2].matrix;
        let k = q2[(0, 0)].re / 15.0;
        assert!((0.4..=2.1).contains(&k));
        let k0 = *kappa.get_or_insert(k);
        assert!((k - k0).abs() <= 1e-12);
        assert!((q2[(1, 1)].re - 15.0 * k * z * z).abs() <= 1e-12);
        assert!(q2[(0, 1)].re.hypot(q2[(0, 1)].im) <= 1e-12);
        let det = to_dmatrix(&blocks[1].matrix).determinant();
        let want = k.powi(3) * 9375.0 / 2.0 * z * z * (35.0 * z.powi(4) - 86.0 * z * z + 3.0);
        assert!((det.re - want).abs() <= 1e-9 * want.abs().max(1.0), "z={z} {det} {want}");
        assert!(det.im.abs() <= 1e-9 * want.abs().max(1.0));
    }
}

#[test]
fn one_fold_slice_is_complementary_to_the_symmetry_directions() {
    let f = fixture("collision10").unwrap();
    let rs = f.primary();
    let s = build_slice(&rs.shape, &rs.u, false, None).unwrap();
    let h = full_hessian(&s.config, f.omega);
    let scale = (0..h.rows()).map(|i| h.row(i).iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max);
    let sa = axis_generator(&s.config);
    let cols = &s.blocks[0].columns;
    let hs = apply(&h, &sa);
    for w in cols {
        assert!(inner(w, &hs).re.abs() <= 1e-10 * scale * norm(w) * norm(&sa));
    }
    let mut all = cols.clone();
    all.push(sa);
    let a = DMatrix::from_fn(all[0].len(), all.len(), |i, k| all[k][i].re);
    let sv = a.singular_values();
    assert!(sv.min() > 1e-8 * sv.max(), "{sv}");

    for (name, n) in [("tetrahedron", 4), ("octahedron", 6)] {
        let f = fixture(name).unwrap();
        let shape = RingShape::new(1, n, 0).unwrap();
        let s = build_slice(&shape, &f.full.vortices, true, None).unwrap();
        let h = full_hessian(&s.config, 0.0);
        for k in 0..2 {
            let t = rotation_generator(&s.config, k);
            let ht = apply(&h, &t);
            for w in &s.blocks[0].columns {
                assert!(tangency_defect(&s.config, w) <= 1e-12);
                assert!(inner(w, &ht).re.abs() <= 1e-10 * norm(w) * norm(&t), "{name}");
            }
        }
    }
}

#[test]
fn simple_eigenpairs_are_validated() {
    let e1 = Cx::new(1.0, 0.0);
    let o = Cx::new(0.0, 0.0);
    let enc = validate_simple_eigenpair(&diag(&[1.0, 2.0, 3.0]), 2.0, &[o, e1, o]).unwrap();
    assert!(enc.value.contains(2.0) && enc.value.width() <= 2e-14);
    assert!(matches!(
        validate_simple_eigenpair(&diag(&[1.0, 1.0 + 1e-13]), 1.0, &[e1, o]),
        Err(StabilityError::NotIsolated { .. })
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..5 {
        let d = 8;
        let mut rows = vec![vec![(0.0, 0.0); d]; d];
        for i in 0..d {
            rows[i][i] = (3.0 * i as f64 + rng.gen_range(-0.5..0.5), 0.0);
            for k in 0..i {
                let c: (f64, f64) = (rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3));
                rows[i][k] = c;
                rows[k][i] = (c.0, -c.1);
            }
        }
        let m = point_matrix(&rows);
        for (lambda, v) in float_eigen(&m.mid()) {
            let enc = validate_simple_eigenpair(&m, lambda, &v).unwrap();
            assert!((enc.value.mid() - lambda).abs() <= 1e-10 && enc.value.width() <= 1e-10);
        }
    }
}

#[test]
fn winding_counts_match_direct_eigenvalues() {
    assert_eq!(count_eigenvalues_winding(&diag(&[1.0, 1.000001]), 1.0, 1e-3).unwrap(), 2);
    assert_eq!(count_eigenvalues_winding(&diag(&[1.0, 2.0, 4.0]), 3.0, 0.5).unwrap(), 0);

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 200 {
        let d = rng.gen_range(2..=12);
        let mut rows = vec![vec![(0.0, 0.0); d]; d];
        for i in 0..d {
            rows[i][i] = (rng.gen_range(-2.0..2.0), 0.0);
            for k in 0..i {
                let c: (f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                rows[i][k] = c;
                rows[k][i] = (c.0, -c.1);
            }
        }
        let m = point_matrix(&rows);
        let eig = eigenvalues(&m.mid());
        let a: f64 = rng.gen_range(-6.0..6.0);
        let b = a + rng.gen_range(0.01..4.0);
        if eig.iter().any(|&l| (l - a).abs() < 1e-3 || (l - b).abs() < 1e-3) {
            continue;
        }
        let want = eig.iter().filter(|&&l| a < l && l < b).count();
        let got = count_eigenvalues_winding_with(&m, a, b, WindingOptions::default()).unwrap();
        assert_eq!(got, want, "d={d} [{a}, {b}] {eig:?}");
        checked += 1;
    }
}

#[test]
fn square_antiprism_is_stable_with_a_kernel_in_the_first_block() {
    let f = fixture("antiprism8").unwrap();
    let rs = f.form(4).unwrap();
    let v = stability_test(&rs.shape, &validated(rs, 0.0), Interval::ZERO, &StabilityOptions::default()).unwrap();
    assert_eq!(v.verdict, Verdict::CertifiedStable);
    let sizes: Vec<usize> = v.blocks.iter().map(|b| b.size).collect();
    assert_eq!(sizes, vec![2, 3, 4]);
    assert_eq!(v.blocks[1].kernel.unwrap().count, 1);
    let p2: Vec<usize> = v.blocks[2].clusters.iter().map(|c| c.count).collect();
    assert_eq!(p2, vec![2, 2]);

    // the two-fold form of the same equilibrium carries the kernel in P1
    let rs = f.form(2).unwrap();
    let v = stability_test(&rs.shape, &validated(rs, 0.0), Interval::ZERO, &StabilityOptions::default()).unwrap();
    assert_eq!(v.verdict, Verdict::CertifiedStable);
    assert_eq!(v.blocks[1].kernel.unwrap().count, 2);
}

#[test]
fn pentagonal_bipyramid_is_inconclusive() {
    let shape = RingShape::new(5, 1, 2).unwrap();
    let v = stability_test(&shape, &exact(&[[1.0, 0.0, 0.0]]), Interval::ZERO, &StabilityOptions::default()).unwrap();
    assert!(matches!(v.verdict, Verdict::Inconclusive(_)), "{:?}", v.verdict);
    assert!(v.blocks[2].eigs.iter().any(|e| e.contains_zero()));
}

#[test]
fn ring_of_seven_is_not_positive() {
    let (shape, u, omega) = one_ring(OneRing::polygon(7).unwrap(), 0.5);
    let v = stability_test(&shape, &u, omega, &StabilityOptions::default()).unwrap();
    match v.verdict {
        Verdict::NotPositive { witness, .. } => assert!(witness.is_neg()),
        other => panic!("{other:?}"),
    }
}

#[test]
fn pentagon_with_poles_loses_stability_at_the_threshold() {
    let zstar = catalog::threshold::<f64>(2, 7).unwrap().z;
    let kind = OneRing::new(5, 2).unwrap();
    let verdict = |z: f64| {
        let (shape, u, omega) = one_ring(kind, z);
        stability_test(&shape, &u, omega, &StabilityOptions::default()).unwrap()
    };
    for z in [0.05, 0.1, 0.15, zstar - 4e-7] {
        assert!(verdict(z).is_stable(), "z={z}");
    }
    for z in [zstar + 4e-7, 0.2, 0.4] {
        let v = verdict(z);
        assert!(matches!(&v.verdict, Verdict::NotPositive { block, .. } if block == "Q1"), "z={z} {:?}", v.verdict);
    }
}

#[test]
fn verdict_json_layout() {
    let (shape, u, omega) = one_ring(OneRing::with_north(5).unwrap(), 0.3);
    let v = stability_test(&shape, &u, omega, &StabilityOptions::default()).unwrap();
    let j = v.to_json();
    assert_eq!(j["verdict"], "CertifiedStable");
    assert!(j["omega"][0].as_f64().unwrap() <= j["omega"][1].as_f64().unwrap());
    assert!(j["mu"].is_array());
    for b in j["blocks"].as_array().unwrap() {
        assert!(b["l"].is_u64() && b["size"].is_u64());
        assert!(b["kind"] == "P" || b["kind"] == "Q");
        assert!(b["eigs"].is_array() && b["clusters"].is_array());
    }
    let (shape, u, omega) = one_ring(OneRing::polygon(7).unwrap(), 0.5);
    let j = stability_test(&shape, &u, omega, &StabilityOptions::default()).unwrap().to_json();
    assert_eq!(j["verdict"], "NotPositive");
    assert!(j["witness"]["eig"].is_array());
}

#[test]
fn parallel_and_serial_block_validation_agree() {
    let f = fixture("icosahedron").unwrap();
    let rs = f.form(5).unwrap();
    let u = validated(rs, 0.0);
    let serial = stability_test(&rs.shape, &u, Interval::ZERO, &StabilityOptions::default()).unwrap();
    let opts = StabilityOptions {
        parallel: true,
        ..Default::default()
    };
    let parallel = stability_test(&rs.shape, &u, Interval::ZERO, &opts).unwrap();
    assert_eq!(serial.to_json(), parallel.to_json());
}

#[test]
fn positivity_propagates_along_the_five_vortex_branch() {
    let policy = StepPolicy::default();
    let rs = fixture("bipyramid5").unwrap().form(2).unwrap().clone();
    let start = seed_point(&rs, 0.0).unwrap();
    let seed = track(rs.shape, &start, 0.2, &policy).unwrap().pop().unwrap();
    let chain = continue_branch(&seed.rings(rs.shape).unwrap(), 0.2, 0.3, &policy).unwrap();
    for c in &chain {
        let s = stability_over_segment(c, &SegmentOptions::default()).unwrap();
        assert!(s.is_stable(), "{:?} {:?}", c.omega, s.reason);
    }
}

#[test]
fn positivity_does_not_propagate_across_the_six_vortex_loss() {
    let policy = StepPolicy::default();
    let rs = fixture("octahedron").unwrap().form(3).unwrap().clone();
    let start = seed_point(&rs, 0.0).unwrap();
    let a = track(rs.shape, &start, 1.41, &policy).unwrap().pop().unwrap();
    let chain = continue_branch(&a.rings(rs.shape).unwrap(), 1.41, 1.42, &policy).unwrap();
    assert_eq!(chain.len(), 1);
    let s = stability_over_segment(&chain[0], &SegmentOptions::default()).unwrap();
    assert!(s.start.is_stable());
    assert!(!s.propagated && !s.is_stable());
    assert_eq!(s.verdict_label(), "Inconclusive");
}

#[test]
fn zero_width_segment_reduces_to_the_point_test() {
    let (rs, omega) = one_ring_family(OneRing::new(5, 2).unwrap(), 0.1).unwrap();
    let x = seed_point(&rs, omega).unwrap();
    let v = nk_validate_point(rs.shape, &x, &rs.u, &NKOptions::default()).unwrap();
    let cert = v.certificate(rs.shape);
    assert!(cert.is_point());
    let seg = stability_over_segment(&cert, &SegmentOptions::default()).unwrap();
    let e = v.enclosure();
    let point = stability_test(&rs.shape, &[[e[0], e[1], e[2]]], Interval::point(omega), &StabilityOptions::default()).unwrap();
    assert!(seg.is_stable() && point.is_stable());
    assert_eq!(seg.start.to_json(), point.to_json());
}
