#![allow(dead_code)]

use mparity::exterior::{basis, dim, Graded};
use mparity::poly::PolyScalar;
use mparity::scalar::{ratio, Rational};
use mparity::{IndexSet, LinMap4, ParityTS, PolyForm, Vec4};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut impl Rng) -> Rational {
    ratio(rng.gen_range(-6..=6), rng.gen_range(1..=5))
}

pub fn any_parity(rng: &mut impl Rng) -> ParityTS {
    ParityTS::ALL[rng.gen_range(0..4)]
}

pub fn rational_graded<K>(rng: &mut impl Rng, degree: usize, parity: ParityTS) -> Graded<Rational, K> {
    let comps = (0..dim(degree)).map(|_| small_rational(rng)).collect();
    Graded::from_components(degree, parity, comps).unwrap()
}

pub fn float_graded<K>(rng: &mut impl Rng, degree: usize, parity: ParityTS) -> Graded<f64, K> {
    let comps = (0..dim(degree)).map(|_| rng.gen_range(-1.0..1.0)).collect();
    Graded::from_components(degree, parity, comps).unwrap()
}

/// Polynomial with up to `terms` monomials of total degree at most `max_degree`.
pub fn poly(rng: &mut impl Rng, max_degree: u32, terms: usize) -> PolyScalar {
    let mut p = PolyScalar::zero();
    for _ in 0..terms {
        let mut exps = [0u32; 4];
        let mut left = rng.gen_range(0..=max_degree);
        while left > 0 {
            exps[rng.gen_range(0..4)] += 1;
            left -= 1;
        }
        p.add_term(exps, small_rational(rng));
    }
    p
}

pub fn polyform(rng: &mut impl Rng, degree: usize, parity: ParityTS, max_degree: u32) -> PolyForm {
    let comps = (0..dim(degree)).map(|_| poly(rng, max_degree, 3)).collect();
    PolyForm::from_components(degree, parity, comps).unwrap()
}

pub fn rational_vec(rng: &mut impl Rng) -> Vec4<Rational> {
    Vec4(std::array::from_fn(|_| small_rational(rng)))
}

pub fn float_vec(rng: &mut impl Rng, scale: f64) -> Vec4 {
    Vec4(std::array::from_fn(|_| rng.gen_range(-scale..scale)))
}

/// Determinant of a square matrix by Laplace expansion; independent of the
/// library's minor routine.
pub fn det_f64(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    if n == 0 {
        return 1.0;
    }
    (0..n)
        .map(|c| {
            let sub: Vec<Vec<f64>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, v)| *v).collect()).collect();
            let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
            sign * m[0][c] * det_f64(&sub)
        })
        .sum()
}

pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<(Vec<usize>, i64)>) {
        if prefix.len() == n {
            let mut inv = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if prefix[i] > prefix[j] {
                        inv += 1;
                    }
                }
            }
            out.push((prefix.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for k in 0..n {
            if !prefix.contains(&k) {
                prefix.push(k);
                go(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut out);
    out
}

/// `a(v_1, .., v_q)` at the reference orientation straight from the
/// components: `Σ_I a_I det[v_k^i]_{i ∈ I}`.
pub fn covector_value(a: &Graded<f64, mparity::exterior::Co>, vs: &[Vec4]) -> f64 {
    basis(a.degree())
        .iter()
        .map(|&set| {
            let rows: Vec<usize> = set.indices().collect();
            let m: Vec<Vec<f64>> = rows.iter().map(|&i| vs.iter().map(|v| v.0[i]).collect()).collect();
            a.component(set) * det_f64(&m)
        })
        .sum()
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

pub fn boost_then(rep: LinMap4, axis: usize, rapidity: f64) -> LinMap4 {
    rep.compose(&LinMap4::boost(axis, rapidity))
}

pub fn label(s: &str) -> IndexSet {
    IndexSet::parse_label(s).unwrap()
}
