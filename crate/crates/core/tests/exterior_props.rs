use mparity::exterior::{basis, dim, interior_right, pair, Co, Contra, Graded};
use mparity::scalar::{ratio, Rational};
use mparity::{IndexSet, OrientationClass, ParityTS, QCovector, QVector, Vec4};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=7).prop_map(|(n, d)| ratio(n, d))
}

fn parity() -> impl Strategy<Value = ParityTS> {
    (0usize..4).prop_map(|k| ParityTS::ALL[k])
}

fn graded<K: std::fmt::Debug + 'static>(degree: usize, p: ParityTS) -> impl Strategy<Value = Graded<Rational, K>> {
    proptest::collection::vec(rational(), dim(degree))
        .prop_map(move |c| Graded::from_components(degree, p, c).unwrap())
}

fn covector(degree: usize) -> impl Strategy<Value = QCovector<Rational>> {
    parity().prop_flat_map(move |p| graded::<Co>(degree, p))
}

fn vec4() -> impl Strategy<Value = Vec4<Rational>> {
    [rational(), rational(), rational(), rational()].prop_map(Vec4)
}

proptest! {
    #[test]
    fn wedge_is_bilinear(p in 0usize..=2, q in 0usize..=2, pa in parity(), pc in parity(), seed in any::<u64>()) {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let mk = |rng: &mut rand_chacha::ChaCha8Rng, d, par| {
            use rand::Rng;
            let c = (0..dim(d)).map(|_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect();
            QCovector::<Rational>::from_components(d, par, c).unwrap()
        };
        let a = mk(&mut rng, p, pa);
        let b = mk(&mut rng, p, pa);
        let c = mk(&mut rng, q, pc);
        let lhs = (a.clone() + b.clone()).wedge(&c).unwrap();
        let rhs = a.wedge(&c).unwrap() + b.wedge(&c).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn interior_product_is_adjoint_to_wedge(
        (p, r) in (0usize..=4).prop_flat_map(|p| (Just(p), p..=4)),
        pw in parity(),
        pa in parity(),
        seed in any::<u64>(),
    ) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut comps = |d: usize| (0..dim(d)).map(|_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect::<Vec<_>>();
        let w = QVector::<Rational>::from_components(p, pw, comps(p)).unwrap();
        let a = QCovector::<Rational>::from_components(r, pa, comps(r)).unwrap();
        let u = QVector::<Rational>::from_components(r - p, pw.combine(pa), comps(r - p)).unwrap();
        let lhs = pair(&interior_right(&w, &a).unwrap(), &u).unwrap();
        let rhs = pair(&a, &w.wedge(&u).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn raise_then_lower_is_identity(a in (0usize..=4).prop_flat_map(covector)) {
        prop_assert_eq!(a.raise().lower(), a);
    }

    #[test]
    fn orientation_flips_by_parity_character(a in covector(2), v in vec4(), w in vec4()) {
        let base = a.evaluate(&[v.clone(), w.clone()], OrientationClass::E).unwrap();
        for o in OrientationClass::ALL {
            let got = a.evaluate(&[v.clone(), w.clone()], o).unwrap();
            prop_assert_eq!(got, base.clone() * ratio(a.parity().character(o), 1));
        }
    }

    #[test]
    fn evaluation_is_alternating(a in covector(2), v in vec4(), w in vec4()) {
        let vw = a.evaluate(&[v.clone(), w.clone()], OrientationClass::E).unwrap();
        let wv = a.evaluate(&[w, v.clone()], OrientationClass::E).unwrap();
        prop_assert_eq!(vw.clone(), -wv);
        prop_assert_eq!(a.evaluate(&[v.clone(), v], OrientationClass::E).unwrap(), ratio(0, 1));
    }

    #[test]
    fn pairing_mismatched_parity_is_rejected(a in covector(1), p in parity()) {
        prop_assume!(p != a.parity());
        let w = QVector::<Rational>::zero(1, p);
        prop_assert!(pair(&a, &w).is_err());
    }

    #[test]
    fn wedge_overflow_is_rejected(p in 1usize..=4, q in 1usize..=4) {
        prop_assume!(p + q > 4);
        let a = QVector::<Rational>::zero(p, ParityTS::EE);
        let b = QVector::<Rational>::zero(q, ParityTS::EE);
        prop_assert!(a.wedge(&b).is_err());
    }

    #[test]
    fn parity_strings_round_trip(p in parity()) {
        let text = serde_json::to_string(&p).unwrap();
        let back: ParityTS = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, p);
    }
}

#[test]
fn index_labels_round_trip() {
    for q in 0..=4 {
        for &set in basis(q) {
            assert_eq!(IndexSet::parse_label(&set.label()).unwrap(), set);
        }
    }
}

#[test]
fn basis_sizes_are_binomial() {
    let sizes: Vec<usize> = (0..=4).map(|q| basis(q).len()).collect();
    assert_eq!(sizes, [1, 4, 6, 4, 1]);
}

#[test]
fn vector_kind_wedge_matches_covector_kind() {
    let a = Graded::<Rational, Contra>::unit(IndexSet::parse_label("01").unwrap(), ParityTS::OE);
    let b = Graded::<Rational, Contra>::unit(IndexSet::parse_label("3").unwrap(), ParityTS::OE);
    let ab = a.wedge(&b).unwrap();
    assert_eq!(ab.parity(), ParityTS::EE);
    assert_eq!(*ab.component(IndexSet::parse_label("013").unwrap()), ratio(1, 1));
}
