//! Inputs shared by the benchmarks.

use mparity::exterior::{dim, Co, Graded};
use mparity::poly::PolyScalar;
use mparity::scalar::ratio;
use mparity::{ParityTS, PolyForm, Rational};

/// Deterministic exact q-covector with small distinct coefficients.
pub fn covector(q: usize, parity: ParityTS, offset: i64) -> Graded<Rational, Co> {
    let comps = (0..dim(q) as i64).map(|k| ratio(k + offset, k % 3 + 1)).collect();
    Graded::from_components(q, parity, comps).expect("component count")
}

/// Polynomial q-form with every component a dense polynomial of the given
/// total degree.
pub fn dense_form(q: usize, parity: ParityTS, degree: u32) -> PolyForm {
    let comps = (0..dim(q))
        .map(|k| {
            let mut p = PolyScalar::zero();
            for a in 0..=degree {
                for b in 0..=degree - a {
                    let c = degree - a - b;
                    p.add_term([a, b, c, (k as u32) % 2], ratio(a as i64 + 2 * b as i64 - k as i64, 1 + c as i64));
                }
            }
            p
        })
        .collect();
    PolyForm::from_components(q, parity, comps).expect("component count")
}
