//! Numeric traits shared by plain floats and intervals, so model code can be
//! written once and evaluated either way.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::interval::{Interval, PI};
use crate::round;

pub trait Ring:
    Copy + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn conj(self) -> Self;
    /// Upper bound on the absolute value.
    fn mag(self) -> f64;
}

pub trait Scalar: Ring + Div<Output = Self> {
    fn from_f64(x: f64) -> Self;
    fn ln(self) -> Self;
    fn sqrt(self) -> Self;
    fn cos(self) -> Self;
    fn sin(self) -> Self;
    fn pi() -> Self;
    fn mid(self) -> f64;
    fn sqr(self) -> Self {
        self * self
    }
    fn from_int(k: i64) -> Self {
        Self::from_f64(k as f64)
    }
    /// `cos(2 pi k / m)`, exact at multiples of a quarter turn.
    fn cos_turn(k: i64, m: i64) -> Self {
        match quarter(k, m) {
            Some(q) => Self::from_f64([1.0, 0.0, -1.0, 0.0][q]),
            None => (Self::from_int(2 * k.rem_euclid(m)) * Self::pi() / Self::from_int(m)).cos(),
        }
    }
    /// `sin(2 pi k / m)`.
    fn sin_turn(k: i64, m: i64) -> Self {
        match quarter(k, m) {
            Some(q) => Self::from_f64([0.0, 1.0, 0.0, -1.0][q]),
            None => (Self::from_int(2 * k.rem_euclid(m)) * Self::pi() / Self::from_int(m)).sin(),
        }
    }
}

fn quarter(k: i64, m: i64) -> Option<usize> {
    let k = k.rem_euclid(m);
    if (4 * k) % m == 0 {
        Some(((4 * k) / m) as usize)
    } else {
        None
    }
}

impl Ring for f64 {
    fn zero() -> f64 {
        0.0
    }
    fn one() -> f64 {
        1.0
    }
    fn conj(self) -> f64 {
        self
    }
    fn mag(self) -> f64 {
        self.abs()
    }
}

impl Scalar for f64 {
    fn from_f64(x: f64) -> f64 {
        x
    }
    fn ln(self) -> f64 {
        f64::ln(self)
    }
    fn sqrt(self) -> f64 {
        f64::sqrt(self)
    }
    fn cos(self) -> f64 {
        f64::cos(self)
    }
    fn sin(self) -> f64 {
        f64::sin(self)
    }
    fn pi() -> f64 {
        std::f64::consts::PI
    }
    fn mid(self) -> f64 {
        self
    }
}

impl Ring for Interval {
    fn zero() -> Interval {
        Interval::ZERO
    }
    fn one() -> Interval {
        Interval::ONE
    }
    fn conj(self) -> Interval {
        self
    }
    fn mag(self) -> f64 {
        Interval::mag(self)
    }
}

impl Scalar for Interval {
    fn from_f64(x: f64) -> Interval {
        Interval::point(x)
    }
    fn ln(self) -> Interval {
        self.ln_ext()
    }
    fn sqrt(self) -> Interval {
        self.sqrt_ext()
    }
    fn cos(self) -> Interval {
        Interval::cos(self)
    }
    fn sin(self) -> Interval {
        Interval::sin(self)
    }
    fn pi() -> Interval {
        PI
    }
    fn mid(self) -> f64 {
        Interval::mid(self)
    }
    fn sqr(self) -> Interval {
        Interval::sqr(self)
    }
}

/// Upper bound on `sqrt(a^2 + b^2)` for nonnegative `a`, `b`.
pub fn hypot_up(a: f64, b: f64) -> f64 {
    round::sqrt_up(round::add_up(round::mul_up(a, a), round::mul_up(b, b)))
}

/// Lower bound on `sqrt(a^2 + b^2)` for nonnegative `a`, `b`.
pub fn hypot_down(a: f64, b: f64) -> f64 {
    round::sqrt_down(round::add_down(round::mul_down(a, a), round::mul_down(b, b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_turns_are_exact() {
        assert_eq!(<f64 as Scalar>::cos_turn(1, 4), 0.0);
        assert_eq!(<Interval as Scalar>::sin_turn(3, 4), Interval::point(-1.0));
        assert_eq!(<Interval as Scalar>::cos_turn(1, 2), Interval::point(-1.0));
    }

    #[test]
    fn turns_enclose_float_values() {
        for m in 1..12 {
            for k in 0..m {
                let c = <Interval as Scalar>::cos_turn(k, m);
                let s = <Interval as Scalar>::sin_turn(k, m);
                let t = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
                assert!(c.inflate(1e-15).contains(t.cos()));
                assert!(s.inflate(1e-15).contains(t.sin()));
                assert!(c.width() < 1e-14 && s.width() < 1e-14);
            }
        }
    }
}
