//! Analytic one-ring branches and their stability thresholds.

use interval_core::Scalar;
use vortex_model::RingSystem;

use crate::CatalogError;

/// A single ring of `m` vortices at height `z` with `p` poles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OneRing {
    pub m: usize,
    pub p: usize,
}

impl OneRing {
    pub fn new(m: usize, p: usize) -> Result<OneRing, CatalogError> {
        if m < 2 || p > 2 {
            return Err(CatalogError::Domain(format!("no one-ring family with m={m}, p={p}")));
        }
        Ok(OneRing { m, p })
    }

    /// `(n1, m_N, p0)` for `N` vortices.
    pub fn polygon(n: usize) -> Result<OneRing, CatalogError> {
        OneRing::new(n, 0)
    }

    /// `(n1, m_{N-1}, p1)` for `N` vortices in total.
    pub fn with_north(n: usize) -> Result<OneRing, CatalogError> {
        OneRing::new(n.saturating_sub(1), 1)
    }

    pub fn n_vortices(&self) -> usize {
        self.m + self.p
    }

    /// Angular velocity making the ring at height `z` a relative equilibrium.
    pub fn omega<S: Scalar>(&self, z: S) -> S {
        let two = S::from_int(2);
        let denom = two * (S::one() - z * z);
        let m = S::from_int(self.m as i64);
        match self.p {
            0 => (m - S::one()) * z / denom,
            1 => (S::one() + m * z) / denom,
            _ => (m + S::one()) * z / denom,
        }
    }

    pub fn at(&self, z: f64) -> Result<(RingSystem, f64), CatalogError> {
        if !(z.abs() < 1.0) {
            return Err(CatalogError::Domain(format!("ring height {z} outside (-1, 1)")));
        }
        let u = [(1.0 - z * z).sqrt(), 0.0, z];
        Ok((RingSystem::new(self.m, 1, self.p, vec![u])?, self.omega(z)))
    }
}

pub fn one_ring_family(kind: OneRing, z: f64) -> Result<(RingSystem, f64), CatalogError> {
    kind.at(z)
}

/// Which side of the threshold height is stable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StableSide {
    /// `|z| > z*`
    AbsAbove,
    /// `z > z*`
    Above,
    /// `0 < |z| < z*`
    AbsBelow,
}

impl StableSide {
    pub fn is_stable(&self, z: f64, zstar: f64) -> bool {
        match self {
            StableSide::AbsAbove => z.abs() > zstar,
            StableSide::Above => z > zstar,
            StableSide::AbsBelow => z != 0.0 && z.abs() < zstar,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Threshold<S> {
    pub z: S,
    pub side: StableSide,
}

/// Threshold height of the one-ring family with `p` poles and `n` vortices.
pub fn threshold<S: Scalar>(p: usize, n: usize) -> Result<Threshold<S>, CatalogError> {
    let i = |k: i64| S::from_int(k);
    let (z, side) = match (p, n) {
        (0, 4) => (S::one() / i(3).sqrt(), StableSide::AbsAbove),
        (0, 5) => (S::one() / i(2).sqrt(), StableSide::AbsAbove),
        (0, 6) => (i(2) / i(5).sqrt(), StableSide::AbsAbove),
        (1, 4) => (-(S::one() / i(3)), StableSide::Above),
        (1, 5) => (S::zero(), StableSide::Above),
        (1, 6) => ((i(6).sqrt() - S::one()) / i(5), StableSide::Above),
        (1, 7) => ((i(19).sqrt() - S::one()) / i(6), StableSide::Above),
        (1, 8) => (i(5) / i(7), StableSide::Above),
        (1, 9) => ((i(65).sqrt() - S::one()) / i(8), StableSide::Above),
        (2, 7) => (((i(43) - i(4) * i(109).sqrt()) / i(35)).sqrt(), StableSide::AbsBelow),
        _ => return Err(CatalogError::NotFound(format!("no stability threshold for p={p}, N={n}"))),
    };
    Ok(Threshold { z, side })
}
