use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{exterior_d_numeric, FormField, PolyForm, SampledForm};
use crate::error::{Error, Result};
use crate::exterior::{basis, interior_right, lift_g_inv_2, volume_covector, ParityTS, QCovector};
use crate::scalar::{Rational, Scalar};

/// Parity assignment for the electromagnetic objects.
///
/// `One`: `F`, `A` are `(e, e)` and `G`, `J` are `(o, o)`.
/// `Two`: `F`, `A` are `(o, e)` and `G`, `J` are `(e, o)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize, Deserialize)]
pub enum Scheme {
    One,
    Two,
}

impl Scheme {
    pub fn field_parity(self) -> ParityTS {
        match self {
            Scheme::One => ParityTS::EE,
            Scheme::Two => ParityTS::OE,
        }
    }

    pub fn source_parity(self) -> ParityTS {
        match self {
            Scheme::One => ParityTS::OO,
            Scheme::Two => ParityTS::EO,
        }
    }

    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(Scheme::One),
            2 => Ok(Scheme::Two),
            other => Err(Error::Scheme(format!("unknown parity scheme {other}"))),
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Scheme::One => 1,
            Scheme::Two => 2,
        }
    }
}

/// Potential `A`, field `F`, induction `G` and current `J`.
#[derive(Clone, Debug)]
pub struct EMSystem<F> {
    pub potential: F,
    pub field: F,
    pub induction: F,
    pub current: F,
    pub scheme: Scheme,
    /// Speed of light.
    pub c: f64,
}

impl<F: FormField> EMSystem<F> {
    /// Degrees 1, 2, 2, 3 and parities as prescribed by the scheme.
    pub fn check_consistency(&self) -> Result<()> {
        let fp = self.scheme.field_parity();
        let sp = self.scheme.source_parity();
        let parts: [(&str, &F, usize, ParityTS); 4] = [
            ("potential", &self.potential, 1, fp),
            ("field", &self.field, 2, fp),
            ("induction", &self.induction, 2, sp),
            ("current", &self.current, 3, sp),
        ];
        for (name, form, degree, parity) in parts {
            if form.degree() != degree {
                return Err(Error::Degree(format!("{name} has degree {}, expected {degree}", form.degree())));
            }
            if form.parity() != parity {
                return Err(Error::Scheme(format!(
                    "{name} has parity {} but scheme {} requires {parity}",
                    form.parity(),
                    self.scheme.number()
                )));
            }
        }
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(Error::Invalid(format!("speed of light must be positive, got {}", self.c)));
        }
        Ok(())
    }
}

/// `4π/c` as the exact rational nearest in double precision; the source
/// equation is then checked exactly against this constant.
pub fn coupling_constant(c: f64) -> Rational {
    Rational::from_f64(4.0 * PI / c)
}

/// `G = (∧²g⁻¹ F̃) ⌟ vol` at a point.
pub fn constitutive_covector<S: Scalar>(f: &QCovector<S>) -> Result<QCovector<S>> {
    if f.degree() != 2 {
        return Err(Error::Degree(format!("constitutive relation needs a 2-form, got degree {}", f.degree())));
    }
    interior_right(&lift_g_inv_2(f)?, &volume_covector())
}

/// Matrix of the constitutive map on the unit bicovectors, column `j` being
/// the image of the `j`-th basis element.
pub fn constitutive_matrix() -> [[i64; 6]; 6] {
    let mut m = [[0i64; 6]; 6];
    for (j, &set) in basis(2).iter().enumerate() {
        let img = constitutive_covector(&QCovector::<Rational>::unit(set, ParityTS::EE))
            .expect("unit bicovector");
        for (i, c) in img.components().iter().enumerate() {
            m[i][j] = Scalar::to_f64(c) as i64;
        }
    }
    m
}

impl PolyForm {
    /// Constitutive relation applied pointwise (exactly).
    pub fn constitutive(&self) -> Result<PolyForm> {
        if self.degree() != 2 {
            return Err(Error::Degree(format!("constitutive relation needs a 2-form, got degree {}", self.degree())));
        }
        let p = self.parity();
        self.map_linear(2, p.combine(ParityTS::OO), |set| {
            constitutive_covector(&QCovector::<Rational>::unit(set, p))
        })
    }
}

impl SampledForm {
    pub fn constitutive(&self) -> Result<SampledForm> {
        if self.degree() != 2 {
            return Err(Error::Degree(format!("constitutive relation needs a 2-form, got degree {}", self.degree())));
        }
        Ok(self.map(2, self.parity().combine(ParityTS::OO), |f| constitutive_covector(&f)))
    }
}

/// `(dF, dG - (4π/c) J)`; both vanish identically iff Maxwell's equations
/// hold.
pub fn maxwell_residuals(sys: &EMSystem<PolyForm>) -> Result<(PolyForm, PolyForm)> {
    sys.check_consistency()?;
    let homogeneous = sys.field.exterior_d();
    let sourced = sys.induction.exterior_d().try_sub(&sys.current.scale(&coupling_constant(sys.c)))?;
    Ok((homogeneous, sourced))
}

/// `G - (∧²g⁻¹ F̃) ⌟ vol`.
pub fn constitutive_residual(sys: &EMSystem<PolyForm>) -> Result<PolyForm> {
    sys.induction.try_sub(&sys.field.constitutive()?)
}

/// `F - dA`.
pub fn potential_residual(sys: &EMSystem<PolyForm>) -> Result<PolyForm> {
    sys.field.try_sub(&sys.potential.exterior_d())
}

impl EMSystem<SampledForm> {
    /// Numeric counterparts of the residuals with central-difference step `h`:
    /// `[dF, dG - (4π/c) J, G - *F, F - dA]`.
    pub fn numeric_residuals(&self, h: f64) -> Result<[SampledForm; 4]> {
        self.check_consistency()?;
        let k = 4.0 * PI / self.c;
        Ok([
            exterior_d_numeric(&self.field, h),
            exterior_d_numeric(&self.induction, h).try_sub(&self.current.scale(k)),
            self.induction.try_sub(&self.field.constitutive()?),
            self.field.try_sub(&exterior_d_numeric(&self.potential, h)),
        ])
    }
}
