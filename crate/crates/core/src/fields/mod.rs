//! Differential forms on affine Minkowski space-time.
//!
//! Two representations are provided. [`PolyForm`] has exact polynomial
//! components and supports the exact exterior differential and the radial
//! homotopy potential. [`SampledForm`] wraps a point evaluator and is
//! differentiated with central differences; it is used for fields such as the
//! Coulomb field that are not polynomial.
//!
//! The affine space is identified with `V` through the origin event, which is
//! also the base point of the homotopy operator.

mod builtin;
mod io;
mod maxwell;
mod polyform;
mod sampled;

use std::sync::Arc;

pub use builtin::{
    coulomb_system, plane_wave, plane_wave_system, uniform_electric, uniform_magnetic,
};
pub use io::{FieldFile, FieldFileError};
pub use maxwell::{
    constitutive_covector, constitutive_matrix, constitutive_residual, coupling_constant, maxwell_residuals,
    potential_residual, EMSystem, Scheme,
};
pub use polyform::PolyForm;
pub use sampled::{exterior_d_numeric, MultivectorField, SampledForm};

use crate::error::{Error, Result};
use crate::exterior::{interior_right, ParityTS, QCovector};
use crate::spacetime::{OrientationClass, Vec4};

/// Anything that yields a covector at each event.
pub trait FormField: Send + Sync {
    fn degree(&self) -> usize;

    fn parity(&self) -> ParityTS;

    /// `Ã(x)`.
    fn covector_at(&self, x: &Vec4<f64>) -> Result<QCovector<f64>>;
}

/// `A(x, v_1, .., v_q, o)`.
pub fn eval_form<F: FormField + ?Sized>(
    form: &F,
    x: &Vec4<f64>,
    vs: &[Vec4<f64>],
    o: OrientationClass,
) -> Result<f64> {
    if vs.len() != form.degree() {
        return Err(Error::Arity { expected: form.degree(), got: vs.len() });
    }
    form.covector_at(x)?.evaluate(vs, o)
}

/// `x -> W(x) ⌟ Ã(x)`.
pub fn interior_field<F>(w: &MultivectorField, form: Arc<F>) -> Result<SampledForm>
where
    F: FormField + ?Sized + 'static,
{
    if w.degree() > form.degree() {
        return Err(Error::Degree(format!(
            "interior product of a {}-vector field into a {}-form",
            w.degree(),
            form.degree()
        )));
    }
    let degree = form.degree() - w.degree();
    let parity = w.parity().combine(form.parity());
    let w = w.clone();
    Ok(SampledForm::new(degree, parity, move |x| {
        interior_right(&w.at(x), &form.covector_at(x)?)
    }))
}

/// Sum of same-degree, same-parity fields, e.g. several external fields
/// acting on one particle.
pub struct SumField {
    parts: Vec<Arc<dyn FormField>>,
    degree: usize,
    parity: ParityTS,
}

impl SumField {
    pub fn new(parts: Vec<Arc<dyn FormField>>) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::Invalid("empty field list".into()))?;
        let (degree, parity) = (first.degree(), first.parity());
        for p in &parts {
            if p.degree() != degree {
                return Err(Error::Degree(format!("summing degree {} with {}", degree, p.degree())));
            }
            if p.parity() != parity {
                return Err(Error::Parity { expected: parity, got: p.parity() });
            }
        }
        Ok(SumField { parts, degree, parity })
    }
}

impl FormField for SumField {
    fn degree(&self) -> usize {
        self.degree
    }

    fn parity(&self) -> ParityTS {
        self.parity
    }

    fn covector_at(&self, x: &Vec4<f64>) -> Result<QCovector<f64>> {
        let mut acc = QCovector::zero(self.degree, self.parity);
        for p in &self.parts {
            acc = acc.try_add(&p.covector_at(x)?)?;
        }
        Ok(acc)
    }
}

impl<F: FormField + ?Sized> FormField for Arc<F> {
    fn degree(&self) -> usize {
        (**self).degree()
    }

    fn parity(&self) -> ParityTS {
        (**self).parity()
    }

    fn covector_at(&self, x: &Vec4<f64>) -> Result<QCovector<f64>> {
        (**self).covector_at(x)
    }
}
