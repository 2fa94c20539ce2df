use std::fmt;
use std::sync::Arc;

use super::{FormField, PolyForm};
use crate::error::Result;
use crate::exterior::{basis, merge_sign, IndexSet, ParityTS, QCovector, QVector};
use crate::spacetime::Vec4;

type Evaluator = dyn Fn(&Vec4<f64>) -> Result<QCovector<f64>> + Send + Sync;

/// Form given by a point evaluator `x -> Ã(x)`.
///
/// The evaluator may refuse points (for example near a Coulomb singularity)
/// by returning [`crate::Error::DomainExcluded`].
#[derive(Clone)]
pub struct SampledForm {
    degree: usize,
    parity: ParityTS,
    eval: Arc<Evaluator>,
}

impl SampledForm {
    pub fn new<F>(degree: usize, parity: ParityTS, eval: F) -> Self
    where
        F: Fn(&Vec4<f64>) -> Result<QCovector<f64>> + Send + Sync + 'static,
    {
        SampledForm { degree, parity, eval: Arc::new(eval) }
    }

    /// Polynomial-backed sampler.
    pub fn from_poly(form: &PolyForm) -> Self {
        let form = form.clone();
        SampledForm::new(form.degree(), form.parity(), move |x| form.covector_at(x))
    }

    /// Sampler over any field.
    pub fn from_field<F: FormField + 'static>(field: F) -> Self {
        SampledForm::new(field.degree(), field.parity(), move |x| field.covector_at(x))
    }

    /// Pointwise `x -> g(Ã(x))` with the declared output degree and parity.
    pub fn map<G>(&self, degree: usize, parity: ParityTS, g: G) -> SampledForm
    where
        G: Fn(QCovector<f64>) -> Result<QCovector<f64>> + Send + Sync + 'static,
    {
        let inner = self.eval.clone();
        SampledForm::new(degree, parity, move |x| g(inner(x)?))
    }

    pub fn try_sub(&self, other: &SampledForm) -> SampledForm {
        let (a, b) = (self.eval.clone(), other.eval.clone());
        SampledForm::new(self.degree, self.parity, move |x| a(x)?.try_sub(&b(x)?))
    }

    pub fn scale(&self, k: f64) -> SampledForm {
        self.map(self.degree, self.parity, move |c| Ok(c.scale(&k)))
    }
}

impl FormField for SampledForm {
    fn degree(&self) -> usize {
        self.degree
    }

    fn parity(&self) -> ParityTS {
        self.parity
    }

    fn covector_at(&self, x: &Vec4<f64>) -> Result<QCovector<f64>> {
        (self.eval)(x)
    }
}

impl fmt::Debug for SampledForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SampledForm(degree {}, parity {})", self.degree, self.parity)
    }
}

/// Exterior differential with central differences of step `h` along each
/// coordinate axis. Truncation error is `O(h^2)` for smooth forms.
pub fn exterior_d_numeric(form: &SampledForm, h: f64) -> SampledForm {
    assert!(h > 0.0, "step must be positive");
    let q = form.degree;
    let parity = form.parity;
    if q == 4 {
        return SampledForm::new(4, parity, move |_| Ok(QCovector::zero(4, parity)));
    }
    let inner = form.eval.clone();
    SampledForm::new(q + 1, parity, move |x| {
        let mut plus = Vec::with_capacity(4);
        let mut minus = Vec::with_capacity(4);
        for i in 0..4 {
            let mut xp = x.clone();
            xp.0[i] += h;
            let mut xm = x.clone();
            xm.0[i] -= h;
            plus.push(inner(&xp)?);
            minus.push(inner(&xm)?);
        }
        let mut out = QCovector::zero(q + 1, parity);
        for &k in basis(q + 1) {
            let mut acc = 0.0;
            for i in k.indices() {
                let rest = k.without(i);
                let sign = merge_sign(IndexSet(1 << i), rest).expect("i not in rest") as f64;
                let diff = (plus[i].component(rest) - minus[i].component(rest)) / (2.0 * h);
                acc += sign * diff;
            }
            out.set_component(k, acc);
        }
        Ok(out)
    })
}

/// Field of q-vectors `x -> W(x)`.
#[derive(Clone)]
pub struct MultivectorField {
    degree: usize,
    parity: ParityTS,
    eval: Arc<dyn Fn(&Vec4<f64>) -> QVector<f64> + Send + Sync>,
}

impl MultivectorField {
    pub fn new<F>(degree: usize, parity: ParityTS, eval: F) -> Self
    where
        F: Fn(&Vec4<f64>) -> QVector<f64> + Send + Sync + 'static,
    {
        MultivectorField { degree, parity, eval: Arc::new(eval) }
    }

    pub fn constant(w: QVector<f64>) -> Self {
        MultivectorField::new(w.degree(), w.parity(), move |_| w.clone())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn parity(&self) -> ParityTS {
        self.parity
    }

    pub fn at(&self, x: &Vec4<f64>) -> QVector<f64> {
        (self.eval)(x)
    }
}
