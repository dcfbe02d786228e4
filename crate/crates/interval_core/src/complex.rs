use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::interval::Interval;
use crate::scalar::{hypot_down, hypot_up, Ring, Scalar};

/// Complex number over a real scalar type; with `Interval` parts this is a
/// rectangular enclosure.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cx<S> {
    pub re: S,
    pub im: S,
}

pub type ComplexInterval = Cx<Interval>;

impl<S: Scalar> Cx<S> {
    pub fn new(re: S, im: S) -> Self {
        Cx { re, im }
    }

    pub fn real(re: S) -> Self {
        Cx { re, im: S::zero() }
    }

    pub fn i() -> Self {
        Cx {
            re: S::zero(),
            im: S::one(),
        }
    }

    pub fn scale(self, s: S) -> Self {
        Cx {
            re: self.re * s,
            im: self.im * s,
        }
    }

    pub fn norm_sqr(self) -> S {
        self.re.sqr() + self.im.sqr()
    }

    /// `exp(2 pi i k / m)`.
    pub fn turn(k: i64, m: i64) -> Self {
        Cx {
            re: S::cos_turn(k, m),
            im: S::sin_turn(k, m),
        }
    }
}

impl ComplexInterval {
    pub fn point(re: f64, im: f64) -> Self {
        Cx {
            re: Interval::point(re),
            im: Interval::point(im),
        }
    }

    pub fn contains_zero(self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    /// Lower bound on `|z|` over the box.
    pub fn mig(self) -> f64 {
        hypot_down(self.re.mig(), self.im.mig())
    }

    pub fn mid(self) -> Cx<f64> {
        Cx {
            re: self.re.mid(),
            im: self.im.mid(),
        }
    }

    pub fn hull(self, other: Self) -> Self {
        Cx {
            re: self.re.hull(other.re),
            im: self.im.hull(other.im),
        }
    }

    pub fn intersect(self, other: Self) -> Option<Self> {
        Some(Cx {
            re: self.re.intersect(other.re)?,
            im: self.im.intersect(other.im)?,
        })
    }

    pub fn entire() -> Self {
        Cx {
            re: Interval::ENTIRE,
            im: Interval::ENTIRE,
        }
    }
}

impl<S: Scalar> Add for Cx<S> {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Cx {
            re: self.re + r.re,
            im: self.im + r.im,
        }
    }
}

impl<S: Scalar> AddAssign for Cx<S> {
    fn add_assign(&mut self, r: Self) {
        *self = *self + r;
    }
}

impl<S: Scalar> Sub for Cx<S> {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Cx {
            re: self.re - r.re,
            im: self.im - r.im,
        }
    }
}

impl<S: Scalar> Neg for Cx<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Cx {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl<S: Scalar> Mul for Cx<S> {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        Cx {
            re: self.re * r.re - self.im * r.im,
            im: self.re * r.im + self.im * r.re,
        }
    }
}

impl<S: Scalar> Div for Cx<S> {
    type Output = Self;
    fn div(self, r: Self) -> Self {
        let d = r.norm_sqr();
        let n = self * r.conj();
        Cx {
            re: n.re / d,
            im: n.im / d,
        }
    }
}

impl<S: Scalar> Ring for Cx<S> {
    fn zero() -> Self {
        Cx {
            re: S::zero(),
            im: S::zero(),
        }
    }
    fn one() -> Self {
        Cx {
            re: S::one(),
            im: S::zero(),
        }
    }
    fn conj(self) -> Self {
        Cx {
            re: self.re,
            im: -self.im,
        }
    }
    fn mag(self) -> f64 {
        hypot_up(self.re.mag(), self.im.mag())
    }
}
