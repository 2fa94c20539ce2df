mod common;

use common::{polyform, rational_graded, rational_vec, rng};
use mparity::fields::plane_wave_system;
use mparity::scalar::ratio;
use mparity::transform::{
    check_covariance, pullback_covector, pullback_form, pushforward_vector, representative, PoincareSpec,
};
use mparity::{Error, LinMap4, OrientationClass, ParityTS, PoincareMap, QCovector, QVector, Rational, Scheme, Vec4};
use proptest::prelude::*;

/// Exact boosts `(cosh, sinh, denominator)` from Pythagorean triples.
const BOOSTS: [(i64, i64, i64); 4] = [(5, 3, 4), (13, 5, 12), (17, 8, 15), (25, 7, 24)];

fn exact_lorentz() -> impl Strategy<Value = LinMap4<Rational>> {
    (0usize..4, 0usize..4, 1usize..4, any::<bool>()).prop_map(|(c, b, axis, flip)| {
        let (ch, sh, den) = BOOSTS[b];
        let sh = if flip { -sh } else { sh };
        let boost = LinMap4::boost_hyperbolic(axis, ratio(ch, den), ratio(sh, den));
        representative::<Rational>(OrientationClass::ALL[c]).compose(&boost)
    })
}

fn poincare() -> impl Strategy<Value = PoincareMap<Rational>> {
    (exact_lorentz(), any::<u64>()).prop_map(|(l, seed)| PoincareMap::new(l, rational_vec(&mut rng(seed))).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pullback_is_functorial(r in exact_lorentz(), s in exact_lorentz(), q in 0usize..=4, p in 0usize..4, seed in any::<u64>()) {
        let a: QCovector<Rational> = rational_graded(&mut rng(seed), q, ParityTS::ALL[p]);
        let both = pullback_covector(&r.compose(&s), &a).unwrap();
        let stepwise = pullback_covector(&r, &pullback_covector(&s, &a).unwrap()).unwrap();
        prop_assert_eq!(both, stepwise);
    }

    #[test]
    fn pushforward_respects_wedge(r in exact_lorentz(), p in 0usize..4, pp in 0usize..4, seed in any::<u64>()) {
        let mut g = rng(seed);
        let w1: QVector<Rational> = rational_graded(&mut g, 1, ParityTS::ALL[p]);
        let w2: QVector<Rational> = rational_graded(&mut g, 2, ParityTS::ALL[pp]);
        let lhs = pushforward_vector(&r, &w1.wedge(&w2).unwrap()).unwrap();
        let rhs = pushforward_vector(&r, &w1).unwrap().wedge(&pushforward_vector(&r, &w2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn poincare_inverse_undoes_apply(phi in poincare(), seed in any::<u64>()) {
        let x = rational_vec(&mut rng(seed));
        prop_assert_eq!(phi.inverse().apply(&phi.apply(&x)), x.clone());
        prop_assert_eq!(phi.compose(&phi.inverse()).apply(&x), x);
    }

    #[test]
    fn pullback_commutes_with_d(phi in poincare(), degree in 0usize..=2, p in 0usize..4, seed in any::<u64>()) {
        let a = polyform(&mut rng(seed), degree, ParityTS::ALL[p], 2);
        let d_then_pull = pullback_form(&phi, &a.exterior_d()).unwrap();
        let pull_then_d = pullback_form(&phi, &a).unwrap().exterior_d();
        prop_assert_eq!(d_then_pull, pull_then_d);
    }

    #[test]
    fn plane_wave_covariance_under_any_exact_map(phi in poincare(), two in any::<bool>()) {
        let scheme = if two { Scheme::Two } else { Scheme::One };
        let sys = plane_wave_system(scheme, ratio(2, 3), ratio(1, 2), 1.0).unwrap();
        let report = check_covariance(&sys, &phi).unwrap();
        prop_assert!(report.passed, "{:?}", report);
    }

    #[test]
    fn float_boosts_classify_with_their_representative(c in 0usize..4, rapidity in -2.0f64..2.0, axis in 1usize..4) {
        let class = OrientationClass::ALL[c];
        let rho = representative::<f64>(class).compose(&LinMap4::boost(axis, rapidity));
        let phi = PoincareMap::lorentz(rho).unwrap();
        prop_assert_eq!(phi.class(), class);
    }
}

#[test]
fn non_lorentz_linear_part_is_rejected() {
    let stretch = LinMap4::<f64>::diag([2, 1, 1, 1]);
    assert!(matches!(PoincareMap::lorentz(stretch), Err(Error::NotLorentz { .. })));
}

#[test]
fn spec_with_exact_entries_round_trips() {
    let text = r#"{
        "matrix": [["5/4", "3/4", 0, 0], ["3/4", "5/4", 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]],
        "translation": [1, "1/3", 0, 0]
    }"#;
    let spec: PoincareSpec = serde_json::from_str(text).unwrap();
    let exact = spec.to_exact().unwrap();
    assert_eq!(exact.class(), OrientationClass::S);
    assert_eq!(*exact.translation(), Vec4::new(ratio(1, 1), ratio(1, 3), ratio(0, 1), ratio(0, 1)));
    let float = spec.to_f64().unwrap();
    assert_eq!(float.class(), OrientationClass::S);
}

#[test]
fn invalid_system_is_refused() {
    let sys = plane_wave_system(Scheme::One, ratio(1, 1), ratio(1, 1), 1.0).unwrap();
    // a current not matching dG breaks the inhomogeneous equation
    let broken = sys.with_current(polyform(&mut rng(1), 3, ParityTS::OO, 1)).unwrap();
    assert!(matches!(check_covariance(&broken, &PoincareMap::identity()), Err(Error::Invalid(_))));
}
