use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{ParityTS, QCovector};
use crate::spacetime::{cone_region_default, metric_pair, ConeRegion, OrientationClass, Vec4, NULL_TOL};

/// How antiparticles are described.
///
/// `Feynman`: charge and momentum are even; an antiparticle is the same
/// world line traversed in the opposite direction.
/// `Dirac`: charge and momentum have parity `(o, e)`; world lines are always
/// future-directed and an antiparticle carries the opposite charge.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChargeScheme {
    Feynman,
    Dirac,
}

impl ChargeScheme {
    /// Parity of charge and momentum.
    pub fn parity(self) -> ParityTS {
        match self {
            ChargeScheme::Feynman => ParityTS::EE,
            ChargeScheme::Dirac => ParityTS::OE,
        }
    }

    /// Parity the external field must have for `e(o) F` to be an even
    /// quantity.
    pub fn field_parity(self) -> ParityTS {
        self.parity()
    }
}

/// Charge as a function of orientation: `e(o) = magnitude · χ(o)`.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
pub struct Charge {
    pub magnitude: f64,
    pub parity: ParityTS,
}

impl Charge {
    pub fn at(&self, o: OrientationClass) -> f64 {
        self.magnitude * self.parity.character(o) as f64
    }
}

#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
pub struct ParticleParams {
    pub mass: f64,
    pub charge: Charge,
    pub scheme: ChargeScheme,
}

impl ParticleParams {
    pub fn new(mass: f64, charge: f64, scheme: ChargeScheme) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::Invalid(format!("mass must be positive, got {mass}")));
        }
        if !charge.is_finite() {
            return Err(Error::Invalid(format!("charge must be finite, got {charge}")));
        }
        Ok(ParticleParams { mass, charge: Charge { magnitude: charge, parity: scheme.parity() }, scheme })
    }

    pub fn feynman(mass: f64, charge: f64) -> Result<Self> {
        Self::new(mass, charge, ChargeScheme::Feynman)
    }

    pub fn dirac(mass: f64, charge: f64) -> Result<Self> {
        Self::new(mass, charge, ChargeScheme::Dirac)
    }

    /// Same particle with the opposite charge value.
    pub fn opposite_charge(&self) -> Self {
        let mut p = *self;
        p.charge.magnitude = -p.charge.magnitude;
        p
    }

    /// Momentum of the given velocity with this particle's mass and parity.
    pub fn momentum(&self, u: &Vec4) -> Result<QCovector> {
        momentum_from_velocity(u, self.mass, self.scheme.parity())
    }
}

/// `⟨g(u), u⟩`, rejecting vectors that are not time-like.
pub fn timelike_norm(u: &Vec4) -> Result<f64> {
    let n = metric_pair(u, u);
    let scale = u.max_abs();
    if !(n > NULL_TOL * scale * scale) || !u.is_finite() {
        return Err(Error::NotTimelike { vector: u.0 });
    }
    Ok(n)
}

/// `π = m g(u) / sqrt⟨g(u), u⟩`, the velocity-momentum relation.
pub fn momentum_from_velocity(u: &Vec4, mass: f64, parity: ParityTS) -> Result<QCovector> {
    let n = timelike_norm(u)?;
    let k = mass / n.sqrt();
    let low = u.lower();
    QCovector::from_components(1, parity, low.0.iter().map(|c| c * k).collect())
}

/// Event, velocity `ξ'` and momentum.
#[derive(Clone, PartialEq, Debug)]
pub struct PhasePoint {
    pub x: Vec4,
    pub u: Vec4,
    pub pi: QCovector,
}

impl PhasePoint {
    /// Phase point with momentum computed from the velocity. Dirac particles
    /// must move towards the future.
    pub fn new(x: Vec4, u: Vec4, params: &ParticleParams) -> Result<Self> {
        let pi = params.momentum(&u)?;
        if params.scheme == ChargeScheme::Dirac && cone_region_default(&u) != ConeRegion::TI1 {
            return Err(Error::NotFutureDirected { vector: u.0 });
        }
        Ok(PhasePoint { x, u, pi })
    }

    /// Start state in natural parameterization: `u` is rescaled to unit norm.
    pub fn natural(x: Vec4, u: Vec4, params: &ParticleParams) -> Result<Self> {
        let n = timelike_norm(&u)?;
        Self::new(x, u * (1.0 / n.sqrt()), params)
    }

    /// `|⟨g(u), u⟩ - 1|`.
    pub fn norm_drift(&self) -> f64 {
        (metric_pair(&self.u, &self.u) - 1.0).abs()
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Sample {
    pub s: f64,
    pub point: PhasePoint,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Reversed,
}

impl Direction {
    /// `+1` or `-1`; multiplies the force term of the equation of motion.
    pub fn sign(self) -> f64 {
        match self {
            Direction::Forward => 1.0,
            Direction::Reversed => -1.0,
        }
    }

    pub fn toggled(self) -> Self {
        match self {
            Direction::Forward => Direction::Reversed,
            Direction::Reversed => Direction::Forward,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parameterization {
    Natural,
    General,
}

/// Phase-space trajectory on a uniform parameter grid.
///
/// The stored momentum always satisfies the velocity-momentum relation
/// `π = m g(ξ') / sqrt⟨g(ξ'), ξ'⟩`. A reversed direction marks a world line
/// obtained by a direction-inverting reparameterization; for it the force
/// term enters the equation of motion with the opposite sign.
#[derive(Clone, PartialEq, Debug)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub direction: Direction,
    pub params: ParticleParams,
    pub parameterization: Parameterization,
}

/// Header of the trajectory CSV format.
pub const CSV_COLUMNS: [&str; 14] =
    ["s", "x0", "x1", "x2", "x3", "u0", "u1", "u2", "u3", "pi0", "pi1", "pi2", "pi3", "norm_drift"];

impl Trajectory {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn first(&self) -> &Sample {
        &self.samples[0]
    }

    pub fn last(&self) -> &Sample {
        self.samples.last().expect("trajectory has samples")
    }

    pub fn span(&self) -> (f64, f64) {
        (self.first().s, self.last().s)
    }

    /// Grid spacing; the grid is uniform by construction.
    pub fn step(&self) -> f64 {
        let (a, b) = self.span();
        (b - a) / (self.len() - 1) as f64
    }

    /// Largest `|⟨g(u), u⟩ - 1|` over the samples.
    pub fn max_norm_drift(&self) -> f64 {
        self.samples.iter().map(|s| s.point.norm_drift()).fold(0.0, f64::max)
    }

    /// True when every velocity lies in the future cone.
    pub fn is_future_directed(&self) -> bool {
        self.samples.iter().all(|s| cone_region_default(&s.point.u) == ConeRegion::TI1)
    }

    /// Rows `s, x0..x3, u0..u3, pi0..pi3, norm_drift`.
    pub fn rows(&self) -> Vec<[f64; 14]> {
        self.samples
            .iter()
            .map(|smp| {
                let p = &smp.point;
                let pi = p.pi.components();
                [
                    smp.s, p.x.0[0], p.x.0[1], p.x.0[2], p.x.0[3], p.u.0[0], p.u.0[1], p.u.0[2], p.u.0[3], pi[0],
                    pi[1], pi[2], pi[3], p.norm_drift(),
                ]
            })
            .collect()
    }

    pub(crate) fn check_grid(&self, needed: usize) -> Result<f64> {
        if self.len() < needed {
            return Err(Error::TooFewSamples { needed, got: self.len() });
        }
        let h = self.step();
        if !(h > 0.0) {
            return Err(Error::Invalid("parameter grid must be increasing".into()));
        }
        for (k, w) in self.samples.windows(2).enumerate() {
            if ((w[1].s - w[0].s) - h).abs() > 1e-6 * h {
                return Err(Error::Invalid(format!("parameter grid is not uniform at sample {k}")));
            }
        }
        Ok(h)
    }
}
