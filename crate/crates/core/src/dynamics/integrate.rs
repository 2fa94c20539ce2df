use super::particle::{
    timelike_norm, Direction, Parameterization, ParticleParams, PhasePoint, Sample, Trajectory,
};
use crate::error::{Error, Result};
use crate::exterior::{interior_right, ParityTS, QVector};
use crate::fields::FormField;
use crate::spacetime::{cone_region_default, ConeRegion, OrientationClass, Vec4};

/// Start states must satisfy `|⟨g(u), u⟩ - 1|` below this.
pub const NATURAL_START_TOL: f64 = 1e-9;

/// `ξ''` solving `m ⟨g(ξ''), δ⟩ = σ e(o) F(x, u, δ, o)` for every `δ`, where
/// `σ` is the direction sign.
pub fn acceleration<F: FormField + ?Sized>(
    field: &F,
    params: &ParticleParams,
    direction: Direction,
    x: &Vec4,
    u: &Vec4,
) -> Result<Vec4> {
    // components are taken relative to the reference orientation
    let f = field.covector_at(x)?;
    let force = interior_right(&QVector::from_vec4(u, ParityTS::EE), &f)?;
    let k = direction.sign() * params.charge.at(OrientationClass::E) / params.mass;
    Ok(force.to_covec()?.raise() * k)
}

fn check_start(start: &PhasePoint, params: &ParticleParams) -> Result<()> {
    if start.norm_drift() > NATURAL_START_TOL {
        return Err(Error::Invalid(format!(
            "start velocity must have unit norm, got ⟨g(u), u⟩ = {}",
            1.0 - start.norm_drift()
        )));
    }
    PhasePoint::new(start.x.clone(), start.u.clone(), params).map(|_| ())
}

fn check_span(span: [f64; 2], steps: usize) -> Result<f64> {
    if steps == 0 {
        return Err(Error::Invalid("need at least one step".into()));
    }
    let h = (span[1] - span[0]) / steps as f64;
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Invalid(format!("parameter span {span:?} must be increasing")));
    }
    Ok(h)
}

/// Straight world line `x(s) = x_0 + (s - s_0) u_0` with constant momentum.
pub fn integrate_free(start: &PhasePoint, params: &ParticleParams, span: [f64; 2], steps: usize) -> Result<Trajectory> {
    check_start(start, params)?;
    let h = check_span(span, steps)?;
    let pi = params.momentum(&start.u)?;
    let samples = (0..=steps)
        .map(|k| {
            let t = k as f64 * h;
            Sample {
                s: span[0] + t,
                point: PhasePoint { x: start.x.clone() + start.u.clone() * t, u: start.u.clone(), pi: pi.clone() },
            }
        })
        .collect();
    Ok(Trajectory { samples, direction: Direction::Forward, params: *params, parameterization: Parameterization::Natural })
}

/// Fixed-step classical RK4 on `x' = u`, `u' = a(x, u)` in natural
/// parameterization; the momentum at each sample is `m g(u)`.
///
/// Integration stops with [`Error::IntegrationAborted`] if the velocity
/// leaves the time-like region, or for Dirac particles the future cone.
pub fn integrate_charged<F: FormField + ?Sized>(
    start: &PhasePoint,
    params: &ParticleParams,
    field: &F,
    span: [f64; 2],
    steps: usize,
) -> Result<Trajectory> {
    check_start(start, params)?;
    if field.degree() != 2 {
        return Err(Error::Degree(format!("field must be a 2-form, got degree {}", field.degree())));
    }
    let expected = params.scheme.field_parity();
    if field.parity() != expected {
        return Err(Error::Parity { expected, got: field.parity() });
    }
    let h = check_span(span, steps)?;
    let dir = Direction::Forward;
    let acc = |x: &Vec4, u: &Vec4| acceleration(field, params, dir, x, u);

    let mut samples = Vec::with_capacity(steps + 1);
    let (mut x, mut u) = (start.x.clone(), start.u.clone());
    samples.push(Sample { s: span[0], point: PhasePoint { x: x.clone(), u: u.clone(), pi: params.momentum(&u)? } });
    for k in 1..=steps {
        let k1x = u.clone();
        let k1u = acc(&x, &u)?;
        let x2 = x.clone() + k1x.clone() * (h / 2.0);
        let u2 = u.clone() + k1u.clone() * (h / 2.0);
        let k2x = u2.clone();
        let k2u = acc(&x2, &u2)?;
        let x3 = x.clone() + k2x.clone() * (h / 2.0);
        let u3 = u.clone() + k2u.clone() * (h / 2.0);
        let k3x = u3.clone();
        let k3u = acc(&x3, &u3)?;
        let x4 = x.clone() + k3x.clone() * h;
        let u4 = u.clone() + k3u.clone() * h;
        let k4x = u4.clone();
        let k4u = acc(&x4, &u4)?;
        x = x + (k1x + k2x * 2.0 + k3x * 2.0 + k4x) * (h / 6.0);
        u = u + (k1u + k2u * 2.0 + k3u * 2.0 + k4u) * (h / 6.0);

        let s = span[0] + k as f64 * h;
        if timelike_norm(&u).is_err() {
            return Err(Error::IntegrationAborted { s, reason: format!("velocity {:?} is no longer time-like", u.0) });
        }
        if params.scheme == super::ChargeScheme::Dirac && cone_region_default(&u) != ConeRegion::TI1 {
            return Err(Error::IntegrationAborted { s, reason: "velocity left the future cone".into() });
        }
        samples.push(Sample { s, point: PhasePoint { x: x.clone(), u: u.clone(), pi: params.momentum(&u)? } });
    }
    Ok(Trajectory { samples, direction: dir, params: *params, parameterization: Parameterization::Natural })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{uniform_electric, uniform_magnetic, PolyForm};
    use crate::scalar::{ratio, Rational, Scalar};

    #[test]
    fn free_line_endpoint() {
        let p = ParticleParams::feynman(1.0, 0.0).unwrap();
        let start = PhasePoint::new(Vec4::zero(), Vec4::new(1.0, 0.0, 0.0, 0.0), &p).unwrap();
        let t = integrate_free(&start, &p, [0.0, 1.0], 10).unwrap();
        assert_eq!(t.last().point.x, Vec4::new(1.0, 0.0, 0.0, 0.0));
        assert!(t.samples.iter().all(|s| s.point.pi == start.pi));
    }

    #[test]
    fn zero_field_matches_free() {
        let p = ParticleParams::feynman(2.0, 1.0).unwrap();
        let u = Vec4::new(1.25, 0.75, 0.0, 0.0);
        let start = PhasePoint::new(Vec4::new(0.0, 1.0, 2.0, 3.0), u, &p).unwrap();
        let zero = PolyForm::zero(2, ParityTS::EE);
        let a = integrate_charged(&start, &p, &zero, [0.0, 2.0], 8).unwrap();
        let b = integrate_free(&start, &p, [0.0, 2.0], 8).unwrap();
        for (sa, sb) in a.samples.iter().zip(&b.samples) {
            assert!((sa.point.x.clone() - sb.point.x.clone()).max_abs() < 1e-14);
        }
    }

    #[test]
    fn magnetic_force_direction() {
        // a^1 = (e/m) B u^2, a^2 = -(e/m) B u^1
        let f = uniform_magnetic(ratio(2, 1), 3, ParityTS::EE).unwrap();
        let p = ParticleParams::feynman(1.0, 1.0).unwrap();
        let u = Vec4::new(2.0f64.sqrt(), 1.0, 0.0, 0.0);
        let a = acceleration(&f, &p, Direction::Forward, &Vec4::zero(), &u).unwrap();
        assert!((a.0[1]).abs() < 1e-15 && (a.0[2] + 2.0).abs() < 1e-15);
    }

    #[test]
    fn electric_force_direction() {
        // a^0 = -(e/m) E u^1, a^1 = -(e/m) E u^0
        let f = uniform_electric(Rational::from_i64(1), 1, ParityTS::EE).unwrap();
        let p = ParticleParams::feynman(1.0, 1.0).unwrap();
        let a = acceleration(&f, &p, Direction::Forward, &Vec4::zero(), &Vec4::new(1.0, 0.0, 0.0, 0.0)).unwrap();
        assert_eq!(a.0, [0.0, -1.0, 0.0, 0.0]);
    }

    #[test]
    fn parity_mismatch_is_rejected() {
        let f = uniform_magnetic(ratio(1, 1), 3, ParityTS::EE).unwrap();
        let p = ParticleParams::dirac(1.0, 1.0).unwrap();
        let start = PhasePoint::new(Vec4::zero(), Vec4::new(1.0, 0.0, 0.0, 0.0), &p).unwrap();
        assert!(matches!(integrate_charged(&start, &p, &f, [0.0, 1.0], 4), Err(Error::Parity { .. })));
    }
}
