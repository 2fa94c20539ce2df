//! Exact multivariate polynomials in the affine coordinates `x0..x3`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{format_rational, Rational, Scalar};
use crate::spacetime::{LinMap4, Vec4};

pub type Exponents = [u32; 4];

/// Polynomial with rational coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PolyScalar {
    terms: BTreeMap<Exponents, Rational>,
}

impl PolyScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial([0; 4], c)
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The coordinate function `x^i`.
    pub fn var(i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exps: Exponents, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, c);
        p
    }

    /// Affine function `c + Σ k_i x^i`.
    pub fn affine(c: Rational, k: [Rational; 4]) -> Self {
        let mut p = Self::constant(c);
        for (i, ki) in k.into_iter().enumerate() {
            p = p + Self::var(i).scale(&ki);
        }
        p
    }

    pub fn add_term(&mut self, exps: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        PolyScalar { terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect() }
    }

    /// `∂/∂x^i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = *e;
            d[i] -= 1;
            out.add_term(d, c * Rational::from_i64(e[i] as i64));
        }
        out
    }

    /// Multiplies by the coordinate `x^i`.
    pub fn mul_var(&self, i: usize) -> Self {
        PolyScalar {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut d = *e;
                    d[i] += 1;
                    (d, c.clone())
                })
                .collect(),
        }
    }

    /// `∫_0^1 t^(k-1) p(t x) dt`, i.e. each monomial of total degree `n`
    /// is divided by `n + k`. Requires `k >= 1`.
    pub fn radial_integral(&self, k: u32) -> Self {
        assert!(k >= 1);
        PolyScalar {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let n: u32 = e.iter().sum();
                    (*e, c / Rational::from_i64((n + k) as i64))
                })
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval<S: Scalar>(&self, x: &Vec4<S>) -> S {
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut term = S::from_rational(c);
            for (i, &n) in e.iter().enumerate() {
                for _ in 0..n {
                    term = term * x.0[i].clone();
                }
            }
            acc = acc + term;
        }
        acc
    }

    pub fn eval_f64(&self, x: &Vec4<f64>) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mono: f64 = e.iter().enumerate().map(|(i, &n)| x.0[i].powi(n as i32)).product();
                Scalar::to_f64(c) * mono
            })
            .sum()
    }

    /// `p(L x + b)`.
    pub fn compose_affine(&self, lin: &LinMap4<Rational>, shift: &Vec4<Rational>) -> Self {
        let images: Vec<PolyScalar> = (0..4)
            .map(|i| {
                PolyScalar::affine(
                    shift.0[i].clone(),
                    std::array::from_fn(|j| lin.m[i][j].clone()),
                )
            })
            .collect();
        // powers of each image coordinate, built lazily
        let mut powers: Vec<Vec<PolyScalar>> = images.iter().map(|_| vec![PolyScalar::one()]).collect();
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut term = PolyScalar::constant(c.clone());
            for i in 0..4 {
                let n = e[i] as usize;
                while powers[i].len() <= n {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][n];
            }
            out = out + term;
        }
        out
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms.values().map(|c| Scalar::to_f64(c).abs()).fold(0.0, f64::max)
    }
}

impl Add for PolyScalar {
    type Output = PolyScalar;
    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Sub for PolyScalar {
    type Output = PolyScalar;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for PolyScalar {
    type Output = PolyScalar;
    fn neg(self) -> Self {
        PolyScalar { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Mul for &PolyScalar {
    type Output = PolyScalar;
    fn mul(self, rhs: &PolyScalar) -> PolyScalar {
        let mut out = PolyScalar::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = std::array::from_fn(|i| ea[i] + eb[i]);
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Mul for PolyScalar {
    type Output = PolyScalar;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl fmt::Display for PolyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{}", format_rational(c))?;
            for (i, &n) in e.iter().enumerate() {
                match n {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{n}")?,
                }
            }
        }
        Ok(())
    }
}
