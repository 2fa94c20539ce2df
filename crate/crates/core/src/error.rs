use thiserror::Error;

use crate::exterior::ParityTS;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("expected {expected} vector arguments, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("degree {0} exceeds the space-time dimension 4")]
    DegreeOverflow(usize),

    #[error("degree mismatch: {0}")]
    Degree(String),

    #[error("parity mismatch: expected {expected}, got {got}")]
    Parity { expected: ParityTS, got: ParityTS },

    #[error("linear map is not a Lorentz transformation (deviation {deviation:e})")]
    NotLorentz { deviation: f64 },

    #[error("linear map is singular")]
    Singular,

    #[error("form is not closed; d of it has nonzero component {component} = {value}")]
    NotClosed { component: String, value: String },

    #[error("point {point:?} lies in the excluded region of the field")]
    DomainExcluded { point: [f64; 4] },

    #[error("vector {vector:?} is not time-like")]
    NotTimelike { vector: [f64; 4] },

    #[error("vector {vector:?} is not future-directed")]
    NotFutureDirected { vector: [f64; 4] },

    #[error("scheme mismatch: {0}")]
    Scheme(String),

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("reparameterization is not strictly monotone near s = {at}")]
    NotMonotone { at: f64 },

    #[error("transformation is not time-reflecting")]
    NotTimeReflecting,

    #[error("integration aborted at s = {s}: {reason}")]
    IntegrationAborted { s: f64, reason: String },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
