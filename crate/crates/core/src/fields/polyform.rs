use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use super::FormField;
use crate::error::{Error, Result};
use crate::exterior::{basis, dim, merge_sign, IndexSet, ParityTS, QCovector};
use crate::poly::PolyScalar;
use crate::scalar::{Rational, Scalar};
use crate::spacetime::{OrientationClass, Vec4};

/// Differential form with exact polynomial components.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyForm {
    degree: usize,
    parity: ParityTS,
    comps: Vec<PolyScalar>,
}

impl PolyForm {
    pub fn zero(degree: usize, parity: ParityTS) -> Self {
        assert!(degree <= 4, "degree {degree} > 4");
        PolyForm { degree, parity, comps: vec![PolyScalar::zero(); dim(degree)] }
    }

    pub fn from_components(degree: usize, parity: ParityTS, comps: Vec<PolyScalar>) -> Result<Self> {
        if degree > 4 {
            return Err(Error::DegreeOverflow(degree));
        }
        if comps.len() != dim(degree) {
            return Err(Error::Degree(format!(
                "degree {degree} needs {} components, got {}",
                dim(degree),
                comps.len()
            )));
        }
        Ok(PolyForm { degree, parity, comps })
    }

    /// `f dx^I`.
    pub fn term(coefficient: PolyScalar, set: IndexSet, parity: ParityTS) -> Self {
        let mut out = Self::zero(set.len(), parity);
        out.comps[set.position()] = coefficient;
        out
    }

    /// Constant-coefficient form from a covector.
    pub fn constant(a: &QCovector<Rational>) -> Self {
        PolyForm {
            degree: a.degree(),
            parity: a.parity(),
            comps: a.components().iter().map(|c| PolyScalar::constant(c.clone())).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn parity(&self) -> ParityTS {
        self.parity
    }

    pub fn with_parity(mut self, parity: ParityTS) -> Self {
        self.parity = parity;
        self
    }

    pub fn components(&self) -> &[PolyScalar] {
        &self.comps
    }

    pub fn component(&self, set: IndexSet) -> &PolyScalar {
        &self.comps[set.position()]
    }

    pub fn terms(&self) -> impl Iterator<Item = (IndexSet, &PolyScalar)> {
        basis(self.degree).iter().copied().zip(self.comps.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(PolyScalar::is_zero)
    }

    /// First nonzero component, if any, as `(label, coefficient)`.
    pub fn first_nonzero(&self) -> Option<(String, String)> {
        self.terms().find(|(_, c)| !c.is_zero()).map(|(s, c)| (s.label(), c.to_string()))
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.comps.iter().map(PolyScalar::max_abs_coefficient).fold(0.0, f64::max)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        PolyForm {
            degree: self.degree,
            parity: self.parity,
            comps: self.comps.iter().map(|c| c.scale(k)).collect(),
        }
    }

    /// Multiplies every component by a polynomial.
    pub fn mul_scalar(&self, f: &PolyScalar) -> Self {
        PolyForm {
            degree: self.degree,
            parity: self.parity,
            comps: self.comps.iter().map(|c| c * f).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        Ok(PolyForm {
            degree: self.degree,
            parity: self.parity,
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.clone() + b.clone()).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other.clone())
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::Degree(format!("{} vs {}", self.degree, other.degree)));
        }
        if self.parity != other.parity {
            return Err(Error::Parity { expected: self.parity, got: other.parity });
        }
        Ok(())
    }

    /// Pointwise exterior product, parity combined.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        let degree = self.degree + other.degree;
        if degree > 4 {
            return Err(Error::DegreeOverflow(degree));
        }
        let mut out = Self::zero(degree, self.parity.combine(other.parity));
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                if let Some(sign) = merge_sign(i, j) {
                    let k = IndexSet(i.0 | j.0).position();
                    let prod = (a * b).scale(&Rational::from_i64(sign));
                    out.comps[k] = std::mem::take(&mut out.comps[k]) + prod;
                }
            }
        }
        Ok(out)
    }

    /// Exact exterior differential; the parity is unchanged and a 4-form
    /// maps to the zero 4-form.
    ///
    /// `d(f dx^J) = Σ_i ∂_i f dx^i ∧ dx^J`, which is the convention where the
    /// first derivative term of the alternating sum enters with `+`.
    pub fn exterior_d(&self) -> PolyForm {
        if self.degree == 4 {
            return PolyForm::zero(4, self.parity);
        }
        let mut out = PolyForm::zero(self.degree + 1, self.parity);
        for (j, f) in self.terms() {
            if f.is_zero() {
                continue;
            }
            for i in 0..4 {
                let single = IndexSet(1 << i);
                if let Some(sign) = merge_sign(single, j) {
                    let k = IndexSet(single.0 | j.0).position();
                    let term = f.partial(i).scale(&Rational::from_i64(sign));
                    out.comps[k] = std::mem::take(&mut out.comps[k]) + term;
                }
            }
        }
        out
    }

    /// Radial homotopy operator about the origin,
    /// `(hA)(x) = ∫_0^1 t^(q-1) (x ⌟ A)(t x) dt`, without a closedness check.
    pub fn homotopy(&self) -> PolyForm {
        assert!(self.degree >= 1, "homotopy operator needs degree >= 1");
        let q = self.degree as u32;
        let mut out = PolyForm::zero(self.degree - 1, self.parity);
        for (k, f) in self.terms() {
            if f.is_zero() {
                continue;
            }
            let integrated = f.radial_integral(q);
            for (pos, idx) in k.indices().enumerate() {
                let rest = k.without(idx);
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                let term = integrated.mul_var(idx).scale(&Rational::from_i64(sign));
                let p = rest.position();
                out.comps[p] = std::mem::take(&mut out.comps[p]) + term;
            }
        }
        out
    }

    /// Potential `B` with `dB = A` for a closed form `A` of degree >= 1.
    pub fn homotopy_potential(&self) -> Result<PolyForm> {
        if self.degree == 0 {
            return Err(Error::Degree("a potential needs a form of degree >= 1".into()));
        }
        let d = self.exterior_d();
        if let Some((component, value)) = d.first_nonzero() {
            return Err(Error::NotClosed { component, value });
        }
        Ok(self.homotopy())
    }

    /// Component covector at an event, exact for rational points.
    pub fn covector_at_exact<S: Scalar>(&self, x: &Vec4<S>) -> QCovector<S> {
        QCovector::from_components(self.degree, self.parity, self.comps.iter().map(|c| c.eval(x)).collect())
            .expect("component count matches degree")
    }

    pub fn eval_exact(&self, x: &Vec4<Rational>, vs: &[Vec4<Rational>], o: OrientationClass) -> Result<Rational> {
        self.covector_at_exact(x).evaluate(vs, o)
    }

    /// `Σ_I F_I(x) image(dx^I)`: applies a constant linear map given by the
    /// images of the unit covectors.
    pub fn map_linear(
        &self,
        out_degree: usize,
        out_parity: ParityTS,
        image: impl Fn(IndexSet) -> Result<QCovector<Rational>>,
    ) -> Result<PolyForm> {
        let mut out = PolyForm::zero(out_degree, out_parity);
        for (set, f) in self.terms() {
            if f.is_zero() {
                continue;
            }
            let img = image(set)?;
            if img.degree() != out_degree {
                return Err(Error::Degree(format!("image of degree {} expected {}", img.degree(), out_degree)));
            }
            for (k, c) in img.terms() {
                if c.is_zero() {
                    continue;
                }
                let p = k.position();
                out.comps[p] = std::mem::take(&mut out.comps[p]) + f.scale(c);
            }
        }
        Ok(out)
    }

    /// Replaces every coefficient `p` by `g(p)`.
    pub fn map_coefficients(&self, g: impl Fn(&PolyScalar) -> PolyScalar) -> PolyForm {
        PolyForm { degree: self.degree, parity: self.parity, comps: self.comps.iter().map(g).collect() }
    }
}

impl FormField for PolyForm {
    fn degree(&self) -> usize {
        self.degree
    }

    fn parity(&self) -> ParityTS {
        self.parity
    }

    fn covector_at(&self, x: &Vec4<f64>) -> Result<QCovector<f64>> {
        QCovector::from_components(self.degree, self.parity, self.comps.iter().map(|c| c.eval_f64(x)).collect())
    }
}

impl Add for PolyForm {
    type Output = PolyForm;
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("adding forms of different spaces")
    }
}

impl Sub for PolyForm {
    type Output = PolyForm;
    fn sub(self, rhs: Self) -> Self {
        self.try_sub(&rhs).expect("subtracting forms of different spaces")
    }
}

impl Neg for PolyForm {
    type Output = PolyForm;
    fn neg(self) -> Self {
        PolyForm { degree: self.degree, parity: self.parity, comps: self.comps.into_iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (set, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c}) dx{}", set.label())?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " [{}]", self.parity)
    }
}
