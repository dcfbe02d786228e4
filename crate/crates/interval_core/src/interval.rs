use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::error::IntervalError;
use crate::round;

/// Closed interval `[lo, hi]` over the extended reals.
#[derive(Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

/// Number of ulps added on each side of a libm transcendental result.
pub const LIBM_SLACK_ULPS: usize = 2;

pub const PI: Interval = Interval {
    lo: std::f64::consts::PI,
    // f64 PI is below the true value; the next float is above it.
    hi: 3.1415926535897936,
};

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };
    pub const ENTIRE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    /// Panics on NaN or reversed endpoints; use `try_new` for untrusted input.
    pub fn new(lo: f64, hi: f64) -> Interval {
        Interval::try_new(lo, hi).expect("invalid interval endpoints")
    }

    pub fn try_new(lo: f64, hi: f64) -> Result<Interval, IntervalError> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(IntervalError::Domain(format!("bad endpoints [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(x: f64) -> Interval {
        Interval::new(x, x)
    }

    /// Interval `[c - r, c + r]` rounded outward.
    pub fn ball(c: f64, r: f64) -> Interval {
        let r = r.abs();
        Interval::new(round::sub_down(c, r), round::add_up(c, r))
    }

    /// Smallest interval containing the exact value `num / den`.
    pub fn ratio(num: i64, den: i64) -> Interval {
        Interval::point(num as f64) / Interval::point(den as f64)
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn mid(self) -> f64 {
        if self.lo == self.hi {
            return self.lo;
        }
        if self.lo.is_infinite() || self.hi.is_infinite() {
            if self.lo.is_infinite() && self.hi.is_infinite() {
                return 0.0;
            }
            return if self.lo.is_infinite() { f64::MIN } else { f64::MAX };
        }
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    /// Upper bound on the distance from the midpoint to either endpoint.
    pub fn rad(self) -> f64 {
        let m = self.mid();
        round::sub_up(self.hi, m).max(round::sub_up(m, self.lo))
    }

    pub fn width(self) -> f64 {
        round::sub_up(self.hi, self.lo)
    }

    /// Largest absolute value.
    pub fn mag(self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value.
    pub fn mig(self) -> f64 {
        if self.contains(0.0) {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn is_finite(self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn is_point(self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(self) -> bool {
        self.contains(0.0)
    }

    pub fn subset_of(self, other: Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn overlaps(self, other: Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn intersect(self, other: Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if lo <= hi {
            Some(Interval { lo, hi })
        } else {
            None
        }
    }

    /// Certainly positive / negative.
    pub fn is_pos(self) -> bool {
        self.lo > 0.0
    }

    pub fn is_neg(self) -> bool {
        self.hi < 0.0
    }

    pub fn abs(self) -> Interval {
        Interval {
            lo: self.mig(),
            hi: self.mag(),
        }
    }

    pub fn sqr(self) -> Interval {
        let a = self.mig();
        let b = self.mag();
        Interval {
            lo: round::mul_down(a, a),
            hi: round::mul_up(b, b),
        }
    }

    /// Grow by `r >= 0` on both sides.
    pub fn inflate(self, r: f64) -> Interval {
        Interval {
            lo: round::sub_down(self.lo, r),
            hi: round::add_up(self.hi, r),
        }
    }

    pub fn max(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo.max(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn try_div(self, rhs: Interval) -> Result<Interval, IntervalError> {
        if rhs.contains_zero() {
            return Err(IntervalError::Domain("division by an interval containing zero".into()));
        }
        Ok(self / rhs)
    }

    pub fn try_ln(self) -> Result<Interval, IntervalError> {
        if !(self.lo > 0.0) {
            return Err(IntervalError::Domain(format!("ln of {self:?}")));
        }
        Ok(self.ln_ext())
    }

    pub fn try_sqrt(self) -> Result<Interval, IntervalError> {
        if self.lo < 0.0 {
            return Err(IntervalError::Domain(format!("sqrt of {self:?}")));
        }
        Ok(self.sqrt_ext())
    }

    /// Logarithm; a nonpositive lower endpoint gives the unbounded result.
    pub fn ln_ext(self) -> Interval {
        if !(self.lo > 0.0) {
            return Interval::ENTIRE;
        }
        let lo = if self.lo == 1.0 {
            0.0
        } else {
            round::down_n(self.lo.ln(), LIBM_SLACK_ULPS)
        };
        let hi = if self.hi == 1.0 {
            0.0
        } else if self.hi.is_infinite() {
            f64::INFINITY
        } else {
            round::up_n(self.hi.ln(), LIBM_SLACK_ULPS)
        };
        Interval { lo, hi }
    }

    /// Square root of the nonnegative part.
    pub fn sqrt_ext(self) -> Interval {
        if self.hi < 0.0 {
            return Interval::ENTIRE;
        }
        Interval {
            lo: round::sqrt_down(self.lo.max(0.0)),
            hi: round::sqrt_up(self.hi),
        }
    }

    pub fn cos(self) -> Interval {
        trig_envelope(self, f64::cos, 0.0)
    }

    pub fn sin(self) -> Interval {
        // sin attains +1 at (2k + 1/2)pi and -1 at (2k + 3/2)pi.
        trig_envelope(self, f64::sin, 0.5)
    }
}

// Extrema of cos sit at k*pi, of sin at (k + 1/2)*pi; `shift` selects which.
// An extremum is included whenever it cannot be excluded rigorously.
fn trig_envelope(x: Interval, f: fn(f64) -> f64, shift: f64) -> Interval {
    let full = Interval::new(-1.0, 1.0);
    if !x.is_finite() || x.width() >= 2.0 * PI.lo {
        return full;
    }
    let fa = f(x.lo);
    let fb = f(x.hi);
    let mut lo = round::down_n(fa.min(fb), LIBM_SLACK_ULPS);
    let mut hi = round::up_n(fa.max(fb), LIBM_SLACK_ULPS);
    let k0 = (x.lo / std::f64::consts::PI - shift).floor() - 1.0;
    let k1 = (x.hi / std::f64::consts::PI - shift).ceil() + 1.0;
    let mut k = k0;
    while k <= k1 {
        let at = Interval::point(k + shift) * PI;
        if at.overlaps(x) {
            // Even k: maximum (+1); odd k: minimum (-1).
            if (k.rem_euclid(2.0)) == 0.0 {
                hi = 1.0;
            } else {
                lo = -1.0;
            }
        }
        k += 1.0;
    }
    Interval {
        lo: lo.max(-1.0),
        hi: hi.min(1.0),
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.17e}, {:.17e}]", self.lo, self.hi)
    }
}

impl From<f64> for Interval {
    fn from(x: f64) -> Interval {
        Interval::point(x)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval {
            lo: round::add_down(self.lo, rhs.lo),
            hi: round::add_up(self.hi, rhs.hi),
        }
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        Interval {
            lo: round::sub_down(self.lo, rhs.hi),
            hi: round::sub_up(self.hi, rhs.lo),
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        let (a, b, c, d) = (self.lo, self.hi, rhs.lo, rhs.hi);
        if a >= 0.0 && c >= 0.0 {
            return Interval {
                lo: round::mul_down(a, c),
                hi: round::mul_up(b, d),
            };
        }
        let lo = round::mul_down(a, c)
            .min(round::mul_down(a, d))
            .min(round::mul_down(b, c))
            .min(round::mul_down(b, d));
        let hi = round::mul_up(a, c)
            .max(round::mul_up(a, d))
            .max(round::mul_up(b, c))
            .max(round::mul_up(b, d));
        Interval { lo, hi }
    }
}

impl Div for Interval {
    type Output = Interval;
    /// Division by an interval containing zero yields the entire line.
    fn div(self, rhs: Interval) -> Interval {
        if rhs.contains_zero() {
            return Interval::ENTIRE;
        }
        let (a, b, c, d) = (self.lo, self.hi, rhs.lo, rhs.hi);
        let lo = round::div_down(a, c)
            .min(round::div_down(a, d))
            .min(round::div_down(b, c))
            .min(round::div_down(b, d));
        let hi = round::div_up(a, c)
            .max(round::div_up(a, d))
            .max(round::div_up(b, c))
            .max(round::div_up(b, d));
        Interval { lo, hi }
    }
}

impl AddAssign for Interval {
    fn add_assign(&mut self, rhs: Interval) {
        *self = *self + rhs;
    }
}

impl SubAssign for Interval {
    fn sub_assign(&mut self, rhs: Interval) {
        *self = *self - rhs;
    }
}

impl MulAssign for Interval {
    fn mul_assign(&mut self, rhs: Interval) {
        *self = *self * rhs;
    }
}
