use mparity::dynamics::{
    dirac_time_reflect, feynman_conjugate, integrate_charged, integrate_free, max_el_residual,
    max_velocity_acceleration_pairing, natural_reparameterize, reparameterize, ChargeScheme, Direction,
    Parameterization, ParticleParams, PhasePoint, Reparameterization, CSV_COLUMNS,
};
use mparity::fields::uniform_magnetic;
use mparity::scalar::ratio;
use mparity::transform::representative;
use mparity::{Error, OrientationClass, ParityTS, PoincareMap, Vec4};
use proptest::prelude::*;

/// Future-directed unit velocity from a spatial velocity with `|v| < 1`.
fn velocity() -> impl Strategy<Value = Vec4> {
    [-0.5f64..0.5, -0.5f64..0.5, -0.5f64..0.5].prop_map(|v| {
        let g = 1.0 / (1.0 - v.iter().map(|c| c * c).sum::<f64>()).sqrt();
        Vec4::new(g, g * v[0], g * v[1], g * v[2])
    })
}

fn event() -> impl Strategy<Value = Vec4> {
    [-2.0f64..2.0, -2.0f64..2.0, -2.0f64..2.0, -2.0f64..2.0].prop_map(Vec4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn magnetic_motion_keeps_unit_norm(u in velocity(), x in event(), b in -3i64..=3, charge in -2.0f64..2.0) {
        let field = uniform_magnetic(ratio(b, 1), 3, ParityTS::EE).unwrap();
        let params = ParticleParams::feynman(1.0, charge).unwrap();
        let start = PhasePoint::new(x, u, &params).unwrap();
        let t = integrate_charged(&start, &params, &field, [0.0, 3.0], 600).unwrap();
        prop_assert!(t.max_norm_drift() < 1e-8);
        prop_assert!(max_el_residual(&t, Some(&field)).unwrap() < 1e-7);
        prop_assert!(max_velocity_acceleration_pairing(&t).unwrap() < 1e-7);
        // a magnetic field does no work: u^0 is conserved
        let u0 = t.first().point.u.0[0];
        prop_assert!(t.samples.iter().all(|s| (s.point.u.0[0] - u0).abs() < 1e-9));
    }

    #[test]
    fn feynman_conjugation_is_an_involution(u in velocity(), x in event(), charge in -2.0f64..2.0) {
        let field = uniform_magnetic(ratio(1, 1), 3, ParityTS::EE).unwrap();
        let params = ParticleParams::feynman(1.0, charge).unwrap();
        let start = PhasePoint::new(x, u, &params).unwrap();
        let t = integrate_charged(&start, &params, &field, [0.0, 1.0], 100).unwrap();
        let once = feynman_conjugate(&t).unwrap();
        prop_assert_eq!(once.direction, Direction::Reversed);
        prop_assert!((once.first().point.x.clone() - t.last().point.x.clone()).max_abs() < 1e-12);
        let twice = feynman_conjugate(&once).unwrap();
        for (a, b) in t.samples.iter().zip(&twice.samples) {
            prop_assert!((a.point.x.clone() - b.point.x.clone()).max_abs() < 1e-12);
            prop_assert!(a.point.pi.max_abs_diff(&b.point.pi) < 1e-12);
        }
    }

    #[test]
    fn affine_reparameterization_keeps_the_world_line(u in velocity(), a in 0.5f64..2.0, b in -1.0f64..1.0, flip in any::<bool>()) {
        let params = ParticleParams::feynman(1.0, 0.0).unwrap();
        let start = PhasePoint::new(Vec4::zero(), u.clone(), &params).unwrap();
        let t = integrate_free(&start, &params, [0.0, 1.0], 50).unwrap();
        let a = if flip { -a } else { a };
        let gamma = Reparameterization::affine(a, b);
        let r = reparameterize(&t, &gamma).unwrap();
        for smp in &r.samples {
            let old = gamma.at(smp.s).clamp(0.0, 1.0);
            prop_assert!((smp.point.x.clone() - u.clone() * old).max_abs() < 1e-9);
            prop_assert!((smp.point.u.clone() - u.clone() * a).max_abs() < 1e-9);
        }
        prop_assert_eq!(r.direction, if flip { Direction::Reversed } else { Direction::Forward });
        prop_assert_eq!(r.parameterization, Parameterization::General);
        // back to proper time
        let n = natural_reparameterize(&r).unwrap();
        prop_assert!(n.max_norm_drift() < 1e-9);
    }

    #[test]
    fn dirac_reflection_stays_future_directed(u in velocity(), x in event(), ts in any::<bool>(), shift in event()) {
        let params = ParticleParams::dirac(1.0, 1.0).unwrap();
        let start = PhasePoint::new(x, u, &params).unwrap();
        let t = integrate_free(&start, &params, [0.0, 1.0], 20).unwrap();
        let class = if ts { OrientationClass::TS } else { OrientationClass::T };
        let phi = PoincareMap::new(representative::<f64>(class), shift).unwrap();
        let r = dirac_time_reflect(&t, &phi).unwrap();
        prop_assert!(r.is_future_directed());
        prop_assert_eq!(r.direction, Direction::Forward);
        prop_assert!(max_el_residual(&r, None).unwrap() < 1e-12);
    }

    #[test]
    fn csv_rows_are_finite(u in velocity(), x in event()) {
        let params = ParticleParams::feynman(2.0, 0.0).unwrap();
        let start = PhasePoint::new(x, u, &params).unwrap();
        let t = integrate_free(&start, &params, [0.0, 1.0], 10).unwrap();
        let rows = t.rows();
        prop_assert_eq!(rows.len(), 11);
        prop_assert!(rows.iter().all(|r| r.len() == CSV_COLUMNS.len() && r.iter().all(|v| v.is_finite())));
    }
}

#[test]
fn dirac_rejects_past_directed_start() {
    let params = ParticleParams::dirac(1.0, 1.0).unwrap();
    assert!(matches!(
        PhasePoint::new(Vec4::zero(), Vec4::new(-1.0, 0.0, 0.0, 0.0), &params),
        Err(Error::NotFutureDirected { .. })
    ));
}

#[test]
fn feynman_accepts_past_directed_start() {
    let params = ParticleParams::feynman(1.0, 1.0).unwrap();
    assert!(PhasePoint::new(Vec4::zero(), Vec4::new(-1.0, 0.0, 0.0, 0.0), &params).is_ok());
}

#[test]
fn reflection_needs_a_time_reversing_map() {
    let params = ParticleParams::dirac(1.0, 1.0).unwrap();
    let start = PhasePoint::new(Vec4::zero(), Vec4::new(1.0, 0.0, 0.0, 0.0), &params).unwrap();
    let t = integrate_free(&start, &params, [0.0, 1.0], 4).unwrap();
    let phi = PoincareMap::lorentz(representative::<f64>(OrientationClass::S)).unwrap();
    assert!(matches!(dirac_time_reflect(&t, &phi), Err(Error::NotTimeReflecting)));
}

#[test]
fn space_like_velocity_is_refused() {
    let params = ParticleParams::feynman(1.0, 1.0).unwrap();
    assert!(matches!(
        PhasePoint::new(Vec4::zero(), Vec4::new(0.5, 1.0, 0.0, 0.0), &params),
        Err(Error::NotTimelike { .. })
    ));
    assert_eq!(params.scheme, ChargeScheme::Feynman);
}
