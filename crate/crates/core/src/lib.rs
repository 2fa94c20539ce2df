//! Parity-typed exterior calculus on Minkowski space-time.
//!
//! Covectors, multivectors and forms carry a parity `(t, s)` that fixes how
//! they change sign under time- and space-reversing changes of orientation.
//! On top of the algebra the crate provides Maxwell's equations with the
//! metric constitutive relation, the action of the full Lorentz and Poincaré
//! groups, and relativistic test-particle dynamics with Feynman-style and
//! Dirac-style antiparticles.
//!
//! Module map:
//!
//! - [`spacetime`]: vectors, metric, light cone, Lorentz group components.
//! - [`exterior`]: q-covectors and q-vectors, wedge, pairing, interior product.
//! - [`fields`]: polynomial and sampled forms, exterior differential, Maxwell.
//! - [`transform`]: index table, pullbacks, parity schemes, covariance checks.
//! - [`dynamics`]: particle trajectories, reparameterizations, antiparticles.

pub mod dynamics;
pub mod error;
pub mod exterior;
pub mod fields;
pub mod poly;
pub mod scalar;
pub mod spacetime;
pub mod transform;

pub use error::{Error, Result};
pub use exterior::{IndexSet, Parity, ParityTS, QCovector, QVector};
pub use fields::{EMSystem, FormField, PolyForm, SampledForm, Scheme};
pub use poly::PolyScalar;
pub use scalar::{Rational, Scalar};
pub use spacetime::{ConeRegion, GLComponent, LinMap4, OrientationClass, Vec4};
pub use transform::PoincareMap;
