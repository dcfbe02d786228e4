//! Point vortices on the unit sphere: Hamiltonian, momentum, dynamics and
//! the Z_m ring reduction, evaluable over floats or intervals.

mod config;
mod error;
pub mod flow;
mod full;
mod ring;
pub mod vec3;

pub use config::{fmt_f64, fmt_vec3, Config};
pub use error::ModelError;
pub use full::{
    augmented_h, augmented_hamiltonian, full_hstar_hessian, grad_augmented, hamiltonian, hamiltonian_h, min_distance,
    momentum, momentum_phi, rhs, vortex_rhs, FullConfiguration, HStarHessian, HamiltonianScale, VortexParameters,
    COLLISION_TOL, UNIT_TOL,
};
pub use ring::{lift_rho, RingShape, RingSystem};
