//! Directed rounding of single floating operations.
//!
//! Each helper returns a bound on the exact real result. Error-free
//! transformations (TwoSum, FMA residuals) decide whether the nearest
//! result is already on the correct side, so exact results stay exact.

const TINY: f64 = 1e-290;

#[inline]
pub fn down(x: f64) -> f64 {
    x.next_down()
}

#[inline]
pub fn up(x: f64) -> f64 {
    x.next_up()
}

fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

pub fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if s.is_nan() {
        return f64::NEG_INFINITY;
    }
    if s.is_infinite() {
        if a.is_finite() && b.is_finite() && s > 0.0 {
            return f64::MAX;
        }
        return s;
    }
    if two_sum_err(a, b, s) < 0.0 {
        down(s)
    } else {
        s
    }
}

pub fn add_up(a: f64, b: f64) -> f64 {
    -add_down(-a, -b)
}

pub fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

pub fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

// Product with the convention 0 * inf = 0 used for interval endpoints.
fn mul_dir(a: f64, b: f64, upward: bool) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if p.is_infinite() {
        if a.is_finite() && b.is_finite() {
            return if p > 0.0 {
                if upward { p } else { f64::MAX }
            } else if upward {
                f64::MIN
            } else {
                p
            };
        }
        return p;
    }
    if p.abs() < TINY {
        return if upward { up(p) } else { down(p) };
    }
    let e = a.mul_add(b, -p);
    if upward && e > 0.0 {
        up(p)
    } else if !upward && e < 0.0 {
        down(p)
    } else {
        p
    }
}

pub fn mul_down(a: f64, b: f64) -> f64 {
    mul_dir(a, b, false)
}

pub fn mul_up(a: f64, b: f64) -> f64 {
    mul_dir(a, b, true)
}

// Quotient for b != 0; infinite operands follow IEEE with inf/inf treated
// as unbounded.
fn div_dir(a: f64, b: f64, upward: bool) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let q = a / b;
    if q.is_nan() {
        return if upward { f64::INFINITY } else { f64::NEG_INFINITY };
    }
    if q.is_infinite() {
        if a.is_finite() && b.is_finite() {
            return if q > 0.0 {
                if upward { q } else { f64::MAX }
            } else if upward {
                f64::MIN
            } else {
                q
            };
        }
        return q;
    }
    if !a.is_finite() || !b.is_finite() || q.abs() < TINY || a.abs() < TINY {
        return if upward { up(q) } else { down(q) };
    }
    // a - q*b exactly; the exact quotient is q + r/b.
    let r = (-q).mul_add(b, a);
    let sign = r * b.signum();
    if upward && sign > 0.0 {
        up(q)
    } else if !upward && sign < 0.0 {
        down(q)
    } else {
        q
    }
}

pub fn div_down(a: f64, b: f64) -> f64 {
    div_dir(a, b, false)
}

pub fn div_up(a: f64, b: f64) -> f64 {
    div_dir(a, b, true)
}

pub fn sqrt_down(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let s = x.sqrt();
    if s.is_infinite() || x < TINY {
        return down(s).max(0.0);
    }
    if s.mul_add(s, -x) > 0.0 {
        down(s)
    } else {
        s
    }
}

pub fn sqrt_up(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let s = x.sqrt();
    if s.is_infinite() {
        return s;
    }
    if x < TINY {
        return up(s);
    }
    if s.mul_add(s, -x) < 0.0 {
        up(s)
    } else {
        s
    }
}

/// Widen a libm result by `k` ulps downward.
pub fn down_n(mut x: f64, k: usize) -> f64 {
    for _ in 0..k {
        x = down(x);
    }
    x
}

pub fn up_n(mut x: f64, k: usize) -> f64 {
    for _ in 0..k {
        x = up(x);
    }
    x
}
