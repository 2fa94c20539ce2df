//! Test particles: free and charged motion, reparameterizations and the
//! Feynman and Dirac descriptions of antiparticles.

mod antiparticle;
mod integrate;
mod particle;
mod reparam;
mod residual;

pub use antiparticle::{dirac_time_reflect, feynman_conjugate};
pub use integrate::{acceleration, integrate_charged, integrate_free, NATURAL_START_TOL};
pub use particle::{
    momentum_from_velocity, timelike_norm, Charge, ChargeScheme, Direction, Parameterization, ParticleParams,
    PhasePoint, Sample, Trajectory, CSV_COLUMNS,
};
pub use reparam::{
    max_velocity_acceleration_pairing, natural_reparameterize, reparam_identities, reparameterize,
    ReparamIdentities, Reparameterization,
};
pub use residual::{el_residual, max_el_residual, Variation};
