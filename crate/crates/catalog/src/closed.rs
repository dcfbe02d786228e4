//! Closed-form heights, evaluated over floats or intervals.

use interval_core::{Interval, Scalar};

/// Ring height of the square antiprism, `sqrt((2 sqrt 58 - 13)/7)`.
pub fn antiprism8_height<S: Scalar>() -> S {
    let r = S::from_int(2) * S::from_int(58).sqrt() - S::from_int(13);
    (r / S::from_int(7)).sqrt()
}

/// Ring height of the gyroelongated square bipyramid, `sqrt(2 sqrt 106 - 19)/3`.
pub fn bipyramid10_height<S: Scalar>() -> S {
    (S::from_int(2) * S::from_int(106).sqrt() - S::from_int(19)).sqrt() / S::from_int(3)
}

pub fn golden<S: Scalar>() -> S {
    (S::one() + S::from_int(5).sqrt()) / S::from_int(2)
}

/// `64x^4 + 105x^3 - 87x^2 - 45x + 27`.
pub fn prism9_quartic<S: Scalar>(x: S) -> S {
    (((S::from_int(64) * x + S::from_int(105)) * x - S::from_int(87)) * x - S::from_int(45)) * x + S::from_int(27)
}

fn quartic_slope(x: Interval) -> Interval {
    ((Interval::point(256.0) * x + Interval::point(315.0)) * x - Interval::point(174.0)) * x - Interval::point(45.0)
}

fn positive_on(lo: f64, hi: f64, depth: u32) -> bool {
    if prism9_quartic(Interval::new(lo, hi)).is_pos() {
        return true;
    }
    if depth == 0 {
        return false;
    }
    let mid = 0.5 * (lo + hi);
    positive_on(lo, mid, depth - 1) && positive_on(mid, hi, depth - 1)
}

/// Smallest positive root of the quartic, enclosed by certified bisection.
///
/// The enclosure `[a, b]` has `p(a) > 0 > p(b)`, the quartic is positive on
/// `[0, a - 1/64]` and strictly decreasing on `[a - 1/64, a]`.
pub fn prism9_height_sq() -> Interval {
    let step = 1.0 / 64.0;
    let mut a = 0.0;
    let mut b = step;
    while !prism9_quartic(Interval::point(b)).is_neg() {
        a = b;
        b += step;
        assert!(b <= 1.0, "no sign change of the quartic on [0, 1]");
    }
    let guard = (a - step).max(0.0);
    assert!(positive_on(0.0, guard, 20), "quartic positivity not certified");
    assert!(quartic_slope(Interval::new(guard, b)).is_neg(), "quartic monotonicity not certified");
    loop {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let v = prism9_quartic(Interval::point(mid));
        if v.is_pos() {
            a = mid;
        } else if v.is_neg() {
            b = mid;
        } else {
            break;
        }
    }
    Interval::new(a, b)
}

/// Height `z_0 = sqrt(x)` of the outer triangles of the N=9 configuration.
pub fn prism9_height() -> Interval {
    prism9_height_sq().sqrt()
}
