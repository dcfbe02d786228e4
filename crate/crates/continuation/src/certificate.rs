//! Certified branch segments and their JSON form.

use std::time::{SystemTime, UNIX_EPOCH};

use interval_core::Interval;
use serde::{Deserialize, Serialize};
use vortex_model::vec3::V3;
use vortex_model::{ModelError, RingShape};

use crate::nk::NKBounds;
use crate::point::AugmentedPoint;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub build: String,
    /// Unix seconds; omitted when the timestamp is kept elsewhere.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub created: Option<u64>,
}

impl Default for Provenance {
    fn default() -> Self {
        Provenance {
            build: format!("vortex-cert {}", env!("CARGO_PKG_VERSION")),
            created: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).ok(),
        }
    }
}

/// A unique zero of `F(., omega_s)` lies within `r0` (sup norm) of
/// `(1 - s) x0 + s x1` for every `s in [0, 1]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchCertificate {
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub omega: [f64; 2],
    pub anchor: Vec<[f64; 3]>,
    pub x0: AugmentedPoint,
    pub x1: AugmentedPoint,
    pub bounds: NKBounds,
    pub status: String,
    pub provenance: Provenance,
}

impl BranchCertificate {
    pub fn new(shape: RingShape, anchor: &[[f64; 3]], x0: &AugmentedPoint, x1: &AugmentedPoint, bounds: NKBounds) -> Self {
        BranchCertificate {
            m: shape.m,
            n: shape.n,
            p: shape.p,
            omega: [x0.omega.min(x1.omega), x0.omega.max(x1.omega)],
            anchor: anchor.to_vec(),
            x0: x0.clone(),
            x1: x1.clone(),
            bounds,
            status: "validated".into(),
            provenance: Provenance::default(),
        }
    }

    pub fn shape(&self) -> RingShape {
        RingShape {
            m: self.m,
            n: self.n,
            p: self.p,
        }
    }

    pub fn r0(&self) -> f64 {
        self.bounds.r0.unwrap_or(f64::INFINITY)
    }

    pub fn is_point(&self) -> bool {
        self.x0 == self.x1
    }

    pub fn omega_at(&self, s: Interval) -> Interval {
        let w0 = Interval::point(self.x0.omega);
        w0 + s * (Interval::point(self.x1.omega) - w0)
    }

    /// Enclosure of `(u, lambda, alpha)` of the zero at `omega_s`, `s` ranging over `s`.
    pub fn tube(&self, s: Interval) -> Vec<Interval> {
        let r = Interval::new(-self.r0(), self.r0());
        self.x0
            .to_vec()
            .iter()
            .zip(self.x1.to_vec())
            .map(|(&a, b)| {
                let a = Interval::point(a);
                a + s * (Interval::point(b) - a) + r
            })
            .collect()
    }

    pub fn tube_hull(&self) -> Vec<Interval> {
        self.tube(Interval::new(0.0, 1.0))
    }

    /// Generator enclosures over `s`.
    pub fn generators(&self, s: Interval) -> Vec<V3<Interval>> {
        let t = self.tube(s);
        (0..self.n).map(|j| [t[3 * j], t[3 * j + 1], t[3 * j + 2]]).collect()
    }

    pub fn mu_enclosure(&self) -> Interval {
        self.shape().mu(&self.generators(Interval::new(0.0, 1.0)))
    }

    /// `H(rho(u))` over the tube, half-scale Hamiltonian.
    pub fn energy_enclosure(&self) -> Interval {
        let shape = self.shape();
        shape.h(&self.generators(Interval::new(0.0, 1.0))) + shape.pole_pair_constant::<Interval>()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<BranchCertificate, ModelError> {
        serde_json::from_str(text).map_err(|e| ModelError::Format(e.to_string()))
    }
}

pub fn chain_to_json(chain: &[BranchCertificate]) -> String {
    serde_json::to_string_pretty(chain).expect("chain serializes")
}

/// A chain file, or a single certificate read as a chain of one.
pub fn chain_from_json(text: &str) -> Result<Vec<BranchCertificate>, ModelError> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| ModelError::Format(e.to_string()))?;
    if v.is_array() {
        serde_json::from_value(v).map_err(|e| ModelError::Format(e.to_string()))
    } else {
        serde_json::from_value(v).map(|c| vec![c]).map_err(|e| ModelError::Format(e.to_string()))
    }
}
