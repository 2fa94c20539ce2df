//! Seeded randomized suites for the exterior algebra and the index table.

use mparity::exterior::{dim, interior_right, pair, Co, Graded};
use mparity::poly::PolyScalar;
use mparity::scalar::ratio;
use mparity::transform::{idx, pullback_covector, pushforward_vector, representative};
use mparity::{LinMap4, OrientationClass, ParityTS, PolyForm, QCovector, QVector, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::report::Check;

/// Deliberate defects for exercising the failure path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Fault {
    /// Expect `b ∧ a = a ∧ b` in every degree.
    WedgeSign,
}

#[derive(Serialize)]
pub struct AlgebraReport {
    pub seed: u64,
    pub cases: usize,
    pub checks: Vec<Check>,
}

const INDEX_TABLE: [[i64; 4]; 4] = [[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]];

fn rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=6))
}

fn parity(rng: &mut ChaCha8Rng) -> ParityTS {
    ParityTS::ALL[rng.gen_range(0..4)]
}

fn graded<K>(rng: &mut ChaCha8Rng, q: usize, p: ParityTS) -> Graded<Rational, K> {
    let comps = (0..dim(q)).map(|_| rational(rng)).collect();
    Graded::from_components(q, p, comps).expect("component count")
}

fn flag(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

fn index_table() -> Check {
    let mut bad = 0.0f64;
    for (row, &p) in ParityTS::ALL.iter().enumerate() {
        for (col, &c) in OrientationClass::ALL.iter().enumerate() {
            bad = bad.max((idx(c, p) - INDEX_TABLE[row][col]).abs() as f64);
        }
    }
    Check::new("index_table", 16, bad, 0.0)
}

fn wedge_laws(rng: &mut ChaCha8Rng, cases: usize, fault: Option<Fault>) -> [Check; 3] {
    let (mut comm, mut assoc, mut par) = (0.0f64, 0.0f64, 0.0f64);
    let (mut n_pairs, mut n_triples) = (0, 0);
    for p in 0..=4 {
        for q in 0..=4 - p {
            for _ in 0..cases {
                let (pa, pb) = (parity(rng), parity(rng));
                let a: Graded<Rational, Co> = graded(rng, p, pa);
                let b: Graded<Rational, Co> = graded(rng, q, pb);
                let ab = a.wedge(&b).expect("degree fits");
                let ba = b.wedge(&a).expect("degree fits");
                let sign = if fault == Some(Fault::WedgeSign) || (p * q) % 2 == 0 { 1 } else { -1 };
                comm = comm.max(ba.max_abs_diff(&ab.scale(&ratio(sign, 1))));
                par = par.max(flag(ab.parity() == pa.combine(pb)));
                n_pairs += 1;
            }
            for r in 0..=4 - p - q {
                for _ in 0..cases {
                    let (pa, pb, pc) = (parity(rng), parity(rng), parity(rng));
                    let a: Graded<Rational, Co> = graded(rng, p, pa);
                    let b: Graded<Rational, Co> = graded(rng, q, pb);
                    let c: Graded<Rational, Co> = graded(rng, r, pc);
                    let left = a.wedge(&b.wedge(&c).expect("fits")).expect("fits");
                    let right = a.wedge(&b).expect("fits").wedge(&c).expect("fits");
                    assoc = assoc.max(left.max_abs_diff(&right));
                    n_triples += 1;
                }
            }
        }
    }
    [
        Check::new("graded_commutativity", n_pairs, comm, 0.0),
        Check::new("associativity", n_triples, assoc, 0.0),
        Check::new("parity_rule", n_pairs, par, 0.0),
    ]
}

fn interior_product(rng: &mut ChaCha8Rng, cases: usize) -> Check {
    let mut worst = 0.0f64;
    let mut n = 0;
    for p in 0..=4 {
        for r in p..=4 {
            for _ in 0..cases {
                let (pw, pa) = (parity(rng), parity(rng));
                let w: QVector<Rational> = graded(rng, p, pw);
                let a: QCovector<Rational> = graded(rng, r, pa);
                let u: QVector<Rational> = graded(rng, r - p, pw.combine(pa));
                let lhs = pair(&interior_right(&w, &a).expect("degrees fit"), &u).expect("parities match");
                let rhs = pair(&a, &w.wedge(&u).expect("fits")).expect("parities match");
                worst = worst.max(mparity::Scalar::to_f64(&(lhs - rhs)).abs());
                n += 1;
            }
        }
    }
    Check::new("interior_product_adjoint", n, worst, 0.0)
}

fn pairing_invariance(rng: &mut ChaCha8Rng, cases: usize) -> Check {
    let boosts = [LinMap4::boost(1, 0.7), LinMap4::boost(3, -1.1).compose(&LinMap4::rotation(1, 2, 0.4))];
    let mut worst = 0.0f64;
    let mut n = 0;
    for _ in 0..cases {
        let q = rng.gen_range(0..=4);
        let p = parity(rng);
        let a = QCovector::from_components(q, p, (0..dim(q)).map(|_| rng.gen_range(-1.0..1.0)).collect()).expect("count");
        let w = QVector::from_components(q, p, (0..dim(q)).map(|_| rng.gen_range(-1.0..1.0)).collect()).expect("count");
        let before = pair(&a, &w).expect("same parity");
        for b in &boosts {
            for c in OrientationClass::ALL {
                let rho = representative::<f64>(c).compose(b);
                let a2 = pullback_covector(&rho, &a).expect("Lorentz");
                let w2 = pushforward_vector(&rho, &w).expect("Lorentz");
                worst = worst.max((pair(&a2, &w2).expect("same parity") - before).abs());
                n += 1;
            }
        }
    }
    Check::new("pairing_invariance", n, worst, 1e-9)
}

fn dd_zero(rng: &mut ChaCha8Rng, cases: usize) -> Check {
    let mut worst = 0.0f64;
    for k in 0..cases {
        let q = k % 3;
        let p = parity(rng);
        let comps = (0..dim(q))
            .map(|_| {
                let mut f = PolyScalar::zero();
                for _ in 0..3 {
                    let mut e = [0u32; 4];
                    for _ in 0..rng.gen_range(0..=3) {
                        e[rng.gen_range(0..4)] += 1;
                    }
                    f.add_term(e, rational(rng));
                }
                f
            })
            .collect();
        let a = PolyForm::from_components(q, p, comps).expect("count");
        worst = worst.max(a.exterior_d().exterior_d().max_abs_coefficient());
    }
    Check::new("dd_zero", cases, worst, 0.0)
}

pub fn run(seed: u64, cases: usize, fault: Option<Fault>) -> AlgebraReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = vec![index_table()];
    checks.extend(wedge_laws(&mut rng, cases, fault));
    checks.push(interior_product(&mut rng, cases));
    checks.push(pairing_invariance(&mut rng, cases));
    checks.push(dd_zero(&mut rng, cases));
    AlgebraReport { seed, cases, checks }
}
