use catalog::{fixture, one_ring_family, OneRing};
use continuation::*;
use interval_core::{verify_invertible, Interval};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vortex_model::vec3::{j3, V3};
use vortex_model::{rhs, RingShape, RingSystem, VortexParameters};

fn sup(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |a, x| a.max(x.abs()))
}

fn pentagon(z: f64) -> (RingSystem, AugmentedPoint) {
    let (rs, w) = one_ring_family(OneRing::new(5, 2).unwrap(), z).unwrap();
    let x = AugmentedPoint::from_rings(&rs, w);
    (rs, x)
}

/// Height on the pentagon family with `3z/(1-z^2) = omega`.
fn pentagon_at(omega: f64) -> (RingSystem, AugmentedPoint) {
    pentagon((-3.0 + (9.0 + 4.0 * omega * omega).sqrt()) / (2.0 * omega))
}

fn random_unit(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-0.9..0.9)];
        let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if r > 0.2 && r < 1.0 {
            return [v[0] / r, v[1] / r, v[2] / r];
        }
    }
}

/// The lifted enclosure solves the relative-equilibrium equation `dv/dt = omega e3 x v`.
fn lifted_re_contains_zero(shape: RingShape, x: &[Interval], omega: Interval) -> bool {
    let u: Vec<V3<Interval>> = (0..shape.n).map(|j| [x[3 * j], x[3 * j + 1], x[3 * j + 2]]).collect();
    let v = shape.lift(&u);
    let f = rhs(&v, &VortexParameters::default());
    f.iter().zip(&v).all(|(fj, vj)| {
        let r = j3(*vj);
        (0..3).all(|a| (fj[a] - omega * r[a]).contains_zero())
    })
}

#[test]
fn map_vanishes_on_the_pentagon_family() {
    let (rs, x) = pentagon(0.1);
    assert!((x.omega - 0.3 / 0.99).abs() < 1e-15);
    let f = augmented_map(rs.shape, &x.to_vec(), x.omega, &rs.u);
    assert!(sup(&f) <= 1e-10);
    assert_eq!(f[4], 0.0);
    assert!(f[3].abs() <= 1e-15);
}

#[test]
fn jacobian_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..30 {
        let m = [2usize, 3, 5][rng.gen_range(0..3)];
        let n = rng.gen_range(1..=3);
        let p = rng.gen_range(0..=2);
        let shape = RingShape::new(m, n, p).unwrap();
        let u: Vec<[f64; 3]> = (0..n).map(|_| random_unit(&mut rng)).collect();
        if RingSystem::new(m, n, p, u.clone()).map(|r| r.lift().min_distance() < 0.2).unwrap_or(true) {
            continue;
        }
        let anchor: Vec<[f64; 3]> = (0..n).map(|_| random_unit(&mut rng)).collect();
        let mut x: Vec<f64> = u.iter().flatten().map(|c| c * rng.gen_range(0.95..1.05)).collect();
        x.extend((0..n).map(|_| rng.gen_range(-2.0..2.0)));
        x.push(rng.gen_range(-0.5..0.5));
        let omega = rng.gen_range(-1.0..1.0);
        let jac = jacobian::<f64>(shape, &x, &anchor);
        let h = 1e-6;
        for k in 0..x.len() {
            let (mut xp, mut xm) = (x.clone(), x.clone());
            xp[k] += h;
            xm[k] -= h;
            let fp = augmented_map(shape, &xp, omega, &anchor);
            let fm = augmented_map(shape, &xm, omega, &anchor);
            for i in 0..x.len() {
                let fd = (fp[i] - fm[i]) / (2.0 * h);
                assert!((fd - jac[(i, k)]).abs() <= 1e-5 * (1.0 + fd.abs()), "({i},{k}) {fd} {}", jac[(i, k)]);
            }
        }
        let fp = augmented_map(shape, &x, omega + h, &anchor);
        let fm = augmented_map(shape, &x, omega - h, &anchor);
        let dw = omega_derivative::<f64>(shape);
        for i in 0..x.len() {
            assert!(((fp[i] - fm[i]) / (2.0 * h) - dw[i]).abs() <= 1e-6);
        }
        // the section row does not depend on x
        let other: Vec<f64> = x.iter().map(|c| c + 0.01).collect();
        let j2 = jacobian::<f64>(shape, &other, &anchor);
        assert_eq!(jac.row(4 * n), j2.row(4 * n));
    }
}

#[test]
fn jacobian_is_invertible_at_nondegenerate_equilibria() {
    let (rs, x) = pentagon(0.1);
    let j = jacobian::<f64>(rs.shape, &x.to_vec(), &rs.u).to_interval();
    assert!(verify_invertible(&j).is_ok());
    let f = fixture("antiprism8").unwrap();
    let rs = f.form(4).unwrap();
    let x = AugmentedPoint::from_rings(rs, 0.0);
    let j = jacobian::<f64>(rs.shape, &x.to_vec(), &rs.u).to_interval();
    assert!(verify_invertible(&j).is_ok());
}

#[test]
fn newton_recovers_perturbed_points() {
    let (rs, x) = pentagon(0.1);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let v: Vec<f64> = x.to_vec().iter().map(|c| c + rng.gen_range(-1e-4..1e-4)).collect();
    let start = AugmentedPoint::from_vec(&v, x.omega).unwrap();
    let y = newton_polish(rs.shape, &start, &rs.u, x.omega).unwrap();
    assert!(residual(rs.shape, &y, &rs.u) <= 1e-13);
    let dev = sup(&y.to_vec().iter().zip(x.to_vec()).map(|(a, b)| a - b).collect::<Vec<_>>());
    assert!(dev <= 1e-12, "{dev:e}");
}

#[test]
fn newton_keeps_an_exact_zero() {
    let f = fixture("octahedron").unwrap();
    let rs = f.form(4).unwrap();
    let x = AugmentedPoint::from_rings(rs, 0.0);
    let y = newton_polish(rs.shape, &x, &rs.u, 0.0).unwrap();
    assert!(sup(&y.to_vec().iter().zip(x.to_vec()).map(|(a, b)| a - b).collect::<Vec<_>>()) <= 1e-15);
}

#[test]
fn newton_fails_gracefully() {
    let shape = RingShape::new(3, 2, 0).unwrap();
    let u = vec![[1.0, 0.0, 0.0], [1.0, 0.0, 0.0]];
    let x = AugmentedPoint {
        u: u.clone(),
        lambda: vec![0.0, 0.0],
        alpha: 0.0,
        omega: 0.0,
    };
    assert!(newton_polish(shape, &x, &u, 0.0).is_err());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let shape = RingShape::new(4, 3, 1).unwrap();
        let u: Vec<[f64; 3]> = (0..3).map(|_| [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)]).collect();
        let x = AugmentedPoint {
            u: u.clone(),
            lambda: vec![rng.gen_range(-50.0..50.0); 3],
            alpha: rng.gen_range(-50.0..50.0),
            omega: 7.0,
        };
        if let Ok(y) = newton_polish(shape, &x, &u, 7.0) {
            assert!(residual(shape, &y, &u) <= NEWTON_STALL_TOL);
        }
    }
}

#[test]
fn point_validation_on_the_pentagon_family() {
    let (rs, x) = pentagon(0.1);
    let v = nk_validate_point(rs.shape, &x, &rs.u, &NKOptions::default()).unwrap();
    assert!(v.r0() <= 1e-8);
    assert!(v.bounds.radii_polynomial(v.r0()) < 0.0);
    assert!(v.r0() <= v.bounds.rstar);
    assert_eq!(v.bounds.y_hat, 0.0);
    let enc = v.enclosure();
    assert!(enc[4 * rs.n()].contains_zero());
    assert!(lifted_re_contains_zero(rs.shape, &enc, Interval::point(x.omega)));

    let mut far = x.clone();
    far.u[0] = [0.0, (1.0f64 - 0.36).sqrt(), 0.6];
    assert!(matches!(
        nk_validate_point(rs.shape, &far, &rs.u, &NKOptions::default()),
        Err(ContinuationError::NotValidated(_))
    ));
}

#[test]
fn radii_root_with_zero_defect() {
    assert!(radii_root(0.0, 0.5, 1e-4).is_some());
    assert!(radii_root(0.0, 0.999, 1e-4).is_some());
    assert!(radii_root(0.0, 1.0, 1e-4).is_none());
    assert!(radii_root(0.0, 3.0, 1e-4).is_none());
    let r = radii_root(1e-10, 0.5, 1e-4).unwrap();
    assert!(r >= 2e-10);
    assert!(((Interval::point(0.5) - Interval::ONE) * Interval::point(r) + Interval::point(1e-10)).is_neg());
    assert!(radii_root(1e-3, 0.5, 1e-4).is_none());
}

#[test]
fn segment_validation_on_the_pentagon_family() {
    let (rs, x0) = pentagon_at(0.30);
    let (_, x1) = pentagon_at(0.31);
    let shape = rs.shape;
    let x1 = newton_polish(shape, &x1, &x0.u, 0.31).unwrap();
    let c = nk_validate_segment(shape, &x0, &x1, &x0.u, &NKOptions::default()).unwrap();
    assert!(c.r0() < 1e-5, "{:?}", c.bounds);
    assert!((c.omega[0] - 0.30).abs() < 1e-15 && (c.omega[1] - 0.31).abs() < 1e-15);
    assert!(c.bounds.radii_polynomial(c.r0()) < 0.0);

    // nested segments never have a larger Yhat
    let (_, xh) = pentagon_at(0.305);
    let xh = newton_polish(shape, &xh, &x0.u, 0.305).unwrap();
    let inner = nk_validate_segment(shape, &x0, &xh, &x0.u, &NKOptions::default()).unwrap();
    assert!(inner.bounds.y_hat <= c.bounds.y_hat);

    // a degenerate segment is a point validation
    let d = nk_validate_segment(shape, &x0, &x0, &x0.u, &NKOptions::default()).unwrap();
    let p = nk_validate_point(shape, &x0, &x0.u, &NKOptions::default()).unwrap();
    assert_eq!(d.bounds, p.bounds);
    assert_eq!(d.bounds.y_hat, 0.0);
}

#[test]
fn segment_across_the_n8_bifurcation_is_not_validated() {
    let policy = StepPolicy::default();
    let f = fixture("antiprism8").unwrap();
    let rs = f.form(2).unwrap();
    let start = seed_point(rs, 0.0).unwrap();
    let a = track(rs.shape, &start, 1.60, &policy).unwrap().pop().unwrap();
    let b = track(rs.shape, &a, 1.62, &policy).unwrap().pop().unwrap();
    let b = newton_polish(rs.shape, &b, &a.u, 1.62).unwrap();
    assert!(matches!(
        nk_validate_segment(rs.shape, &a, &b, &a.u, &NKOptions::default()),
        Err(ContinuationError::NotValidated(_))
    ));
}

fn check_chain(chain: &[BranchCertificate], from: f64, to: f64) {
    assert!(!chain.is_empty());
    assert_eq!(chain[0].omega[0], from);
    assert_eq!(chain.last().unwrap().omega[1], to);
    for c in chain {
        assert_eq!(c.status, "validated");
        let n = c.n;
        let alpha = c.tube_hull()[4 * n];
        let drift = (c.x1.alpha - c.x0.alpha).abs() + c.x0.alpha.abs().max(c.x1.alpha.abs());
        assert!(alpha.contains_zero());
        assert!(alpha.width() <= 2.0 * c.r0() + 2.0 * drift + 1e-15, "{alpha:?} {}", c.r0());
        let end = c.tube(Interval::ONE);
        assert!(lifted_re_contains_zero(c.shape(), &end, Interval::point(c.omega[1])));
    }
    for w in chain.windows(2) {
        assert_eq!(w[0].omega[1], w[1].omega[0]);
        let a = w[0].tube(Interval::ONE);
        let b = w[1].tube(Interval::ZERO);
        assert!(a.iter().zip(&b).all(|(p, q)| p.overlaps(*q)));
    }
}

#[test]
fn n5_branch_is_certified_on_a_subsegment() {
    let policy = StepPolicy::default();
    let f = fixture("bipyramid5").unwrap();
    let rs = f.form(2).unwrap();
    let start = seed_point(rs, 0.0).unwrap();
    let seed = track(rs.shape, &start, 0.2, &policy).unwrap().pop().unwrap();
    let chain = continue_branch(&seed.rings(rs.shape).unwrap(), 0.2, 0.3, &policy).unwrap();
    check_chain(&chain, 0.2, 0.3);
    let text = chain_to_json(&chain);
    assert_eq!(chain_from_json(&text).unwrap(), chain);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let b = &v[0]["bounds"];
    for key in ["Y", "Yhat", "Z", "rstar", "r0"] {
        assert!(b[key].is_number(), "{key}");
    }
    assert_eq!(b["norm"], "sup");
    assert_eq!(v[0]["status"], "validated");
    assert!(v[0]["x0"]["lambda"].is_array());
}

#[test]
fn near_collision_branch_with_one_fold_symmetry() {
    let f = fixture("collision10").unwrap();
    let chain = continue_branch(f.primary(), 50.0, 50.1, &StepPolicy::default()).unwrap();
    check_chain(&chain, 50.0, 50.1);
}

#[test]
fn empty_and_reversed_ranges() {
    let (rs, _) = pentagon(0.1);
    assert!(continue_branch(&rs, 0.4, 0.3, &StepPolicy::default()).unwrap().is_empty());
    assert!(continue_branch(&rs, 0.3, 0.3, &StepPolicy::default()).unwrap().is_empty());
}

#[test]
fn numeric_chain_without_rigor() {
    let (rs, x) = pentagon(0.1);
    let policy = StepPolicy {
        rigor: false,
        ..StepPolicy::default()
    };
    let chain = continue_branch(&rs, x.omega, x.omega + 0.05, &policy).unwrap();
    assert!(chain.iter().all(|c| c.status == "numeric" && c.bounds.r0.is_none()));
    assert_eq!(chain_from_json(&chain_to_json(&chain)).unwrap(), chain);
}
