//! Ready-made fields: uniform magnetic and electric fields, a linear plane
//! wave (all polynomial) and the Coulomb field of a charge resting at the
//! spatial origin (sampled).

use super::{EMSystem, PolyForm, SampledForm, Scheme};
use crate::error::{Error, Result};
use crate::exterior::{IndexSet, ParityTS, QCovector};
use crate::poly::PolyScalar;
use crate::scalar::{Rational, Scalar};

fn set(i: usize, j: usize) -> IndexSet {
    IndexSet((1 << i) | (1 << j))
}

/// `B dx^j ∧ dx^k` with `(axis, j, k)` cyclic, i.e. a magnetic field along
/// the spatial `axis`.
pub fn uniform_magnetic(strength: Rational, axis: usize, parity: ParityTS) -> Result<PolyForm> {
    let (j, k) = match axis {
        1 => (2, 3),
        2 => (3, 1),
        3 => (1, 2),
        other => return Err(Error::Invalid(format!("magnetic axis must be 1, 2 or 3, got {other}"))),
    };
    // dx^3 ∧ dx^1 = -dx^1 ∧ dx^3
    let (lo, hi, sign) = if j < k { (j, k, 1) } else { (k, j, -1) };
    Ok(PolyForm::term(
        PolyScalar::constant(strength * Rational::from_i64(sign)),
        set(lo, hi),
        parity,
    ))
}

/// `E dx^0 ∧ dx^axis`.
pub fn uniform_electric(strength: Rational, axis: usize, parity: ParityTS) -> Result<PolyForm> {
    if !(1..4).contains(&axis) {
        return Err(Error::Invalid(format!("electric axis must be 1, 2 or 3, got {axis}")));
    }
    Ok(PolyForm::term(PolyScalar::constant(strength), set(0, axis), parity))
}

/// `f(x^0 - x^3) (dx^0 ∧ dx^1 - dx^3 ∧ dx^1)` with `f(u) = amplitude + slope u`.
pub fn plane_wave(amplitude: Rational, slope: Rational, parity: ParityTS) -> PolyForm {
    let zero = Rational::from_i64(0);
    let profile = PolyScalar::affine(
        amplitude,
        [slope.clone(), zero.clone(), zero, -slope],
    );
    PolyForm::term(profile.clone(), set(0, 1), parity) + PolyForm::term(profile, set(1, 3), parity)
}

/// Source-free plane-wave system: `A` is the homotopy potential of `F`,
/// `G` follows from the constitutive relation and `J = 0`.
pub fn plane_wave_system(scheme: Scheme, amplitude: Rational, slope: Rational, c: f64) -> Result<EMSystem<PolyForm>> {
    let field = plane_wave(amplitude, slope, scheme.field_parity());
    EMSystem::source_free(field, scheme, c)
}

impl EMSystem<PolyForm> {
    /// Builds `A = h(F)`, `G = *F` and `J = 0` from a field 2-form whose
    /// parity matches the scheme. No closedness check is made, so the
    /// residuals of a non-closed `F` show up in the Maxwell checks.
    pub fn source_free(field: PolyForm, scheme: Scheme, c: f64) -> Result<Self> {
        if field.degree() != 2 {
            return Err(Error::Degree(format!("field must be a 2-form, got degree {}", field.degree())));
        }
        if field.parity() != scheme.field_parity() {
            return Err(Error::Scheme(format!(
                "field parity {} does not match scheme {}",
                field.parity(),
                scheme.number()
            )));
        }
        let sys = EMSystem {
            potential: field.homotopy(),
            induction: field.constitutive()?,
            current: PolyForm::zero(3, scheme.source_parity()),
            field,
            scheme,
            c,
        };
        sys.check_consistency()?;
        Ok(sys)
    }

    /// Replaces the zero current by `J`.
    pub fn with_current(mut self, current: PolyForm) -> Result<Self> {
        self.current = current;
        self.check_consistency()?;
        Ok(self)
    }
}

/// Coulomb system of a point charge at rest at the spatial origin:
/// `A = (Q/r) dx^0`, `F = dA`, `G = *F`, `J = 0` away from the world line.
///
/// Events with `r < exclusion_radius` are refused with
/// [`Error::DomainExcluded`].
pub fn coulomb_system(charge: f64, exclusion_radius: f64, scheme: Scheme, c: f64) -> Result<EMSystem<SampledForm>> {
    if exclusion_radius <= 0.0 {
        return Err(Error::Invalid("exclusion radius must be positive".into()));
    }
    let fp = scheme.field_parity();
    let radius = move |x: &crate::spacetime::Vec4<f64>| -> Result<f64> {
        let r = (x.0[1] * x.0[1] + x.0[2] * x.0[2] + x.0[3] * x.0[3]).sqrt();
        if r < exclusion_radius {
            Err(Error::DomainExcluded { point: x.0 })
        } else {
            Ok(r)
        }
    };
    let potential = SampledForm::new(1, fp, move |x| {
        let r = radius(x)?;
        QCovector::from_components(1, fp, vec![charge / r, 0.0, 0.0, 0.0])
    });
    // dA = Σ_i ∂_i(Q/r) dx^i ∧ dx^0 = Σ_i (Q x^i / r^3) dx^0 ∧ dx^i
    let field = SampledForm::new(2, fp, move |x| {
        let r = radius(x)?;
        let k = charge / (r * r * r);
        QCovector::from_components(2, fp, vec![k * x.0[1], k * x.0[2], k * x.0[3], 0.0, 0.0, 0.0])
    });
    let induction = field.constitutive()?;
    let sp = scheme.source_parity();
    let current = SampledForm::new(3, sp, move |x| {
        radius(x)?;
        Ok(QCovector::zero(3, sp))
    });
    let sys = EMSystem { potential, field, induction, current, scheme, c };
    sys.check_consistency()?;
    Ok(sys)
}
