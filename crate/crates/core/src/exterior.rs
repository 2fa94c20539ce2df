//! Parity-typed exterior algebra at a point.
//!
//! A q-covector (or q-vector) carries a [`ParityTS`] tag besides its
//! components. Components are stored for the reference orientation `E` on
//! strictly increasing index tuples in lexicographic order; the value at any
//! other orientation follows from the parity character.

use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spacetime::{GLComponent, OrientationClass, Vec4, METRIC_SIGNS};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    fn letter(self) -> char {
        match self {
            Parity::Even => 'e',
            Parity::Odd => 'o',
        }
    }

    /// Sign picked up under an orientation-reversing (`P`) change.
    pub fn gl_character(self, c: GLComponent) -> i64 {
        match (self, c) {
            (Parity::Odd, GLComponent::P) => -1,
            _ => 1,
        }
    }
}

/// Temporal and spatial parity.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct ParityTS {
    pub t: Parity,
    pub s: Parity,
}

impl ParityTS {
    pub const EE: ParityTS = ParityTS { t: Parity::Even, s: Parity::Even };
    pub const OE: ParityTS = ParityTS { t: Parity::Odd, s: Parity::Even };
    pub const EO: ParityTS = ParityTS { t: Parity::Even, s: Parity::Odd };
    pub const OO: ParityTS = ParityTS { t: Parity::Odd, s: Parity::Odd };
    pub const ALL: [ParityTS; 4] = [Self::EE, Self::OE, Self::EO, Self::OO];

    pub fn new(t: Parity, s: Parity) -> Self {
        ParityTS { t, s }
    }

    pub fn combine(self, other: ParityTS) -> ParityTS {
        ParityTS { t: self.t.combine(other.t), s: self.s.combine(other.s) }
    }

    /// `a(.., o) = character(o) * a(.., E)` for an object of this parity.
    pub fn character(self, o: OrientationClass) -> i64 {
        let mut sign = 1;
        if self.t == Parity::Odd && o.reverses_time() {
            sign = -sign;
        }
        if self.s == Parity::Odd && o.reverses_space() {
            sign = -sign;
        }
        sign
    }
}

impl fmt::Display for ParityTS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.t.letter(), self.s.letter())
    }
}

impl FromStr for ParityTS {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ee" => Ok(Self::EE),
            "oe" => Ok(Self::OE),
            "eo" => Ok(Self::EO),
            "oo" => Ok(Self::OO),
            other => Err(Error::Invalid(format!("unknown parity {other:?}"))),
        }
    }
}

impl serde::Serialize for ParityTS {
    fn serialize<Ser: serde::Serializer>(&self, ser: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        ser.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for ParityTS {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(de)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Strictly increasing index tuple, stored as a bit set over `{0,1,2,3}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct IndexSet(pub u8);

const BASIS: [&[IndexSet]; 5] = [
    &[IndexSet(0b0000)],
    &[IndexSet(0b0001), IndexSet(0b0010), IndexSet(0b0100), IndexSet(0b1000)],
    &[
        IndexSet(0b0011),
        IndexSet(0b0101),
        IndexSet(0b1001),
        IndexSet(0b0110),
        IndexSet(0b1010),
        IndexSet(0b1100),
    ],
    &[IndexSet(0b0111), IndexSet(0b1011), IndexSet(0b1101), IndexSet(0b1110)],
    &[IndexSet(0b1111)],
];

impl IndexSet {
    pub fn from_indices(idx: &[usize]) -> Result<Self> {
        let mut bits = 0u8;
        let mut last = None;
        for &i in idx {
            if i > 3 || last.is_some_and(|l| l >= i) {
                return Err(Error::Invalid(format!("index tuple {idx:?} is not strictly increasing in 0..4")));
            }
            bits |= 1 << i;
            last = Some(i);
        }
        Ok(IndexSet(bits))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..4).filter(move |&i| self.contains(i))
    }

    pub fn without(self, i: usize) -> IndexSet {
        IndexSet(self.0 & !(1 << i))
    }

    pub fn with(self, i: usize) -> IndexSet {
        IndexSet(self.0 | (1 << i))
    }

    /// Concatenated digits, e.g. `"013"`.
    pub fn label(self) -> String {
        self.indices().map(|i| char::from(b'0' + i as u8)).collect()
    }

    pub fn parse_label(label: &str) -> Result<Self> {
        let idx: Vec<usize> = label
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Invalid(format!("bad index label {label:?}")))?;
        Self::from_indices(&idx)
    }

    /// Position of this tuple in the lexicographic basis of its degree.
    pub fn position(self) -> usize {
        BASIS[self.len()].iter().position(|&b| b == self).expect("basis covers all subsets")
    }
}

/// Increasing index tuples of degree `q` in storage order.
pub fn basis(q: usize) -> &'static [IndexSet] {
    BASIS[q]
}

/// `C(4, q)`.
pub fn dim(q: usize) -> usize {
    BASIS[q].len()
}

/// Sign of the permutation sorting the concatenation `(I, J)`, or `None` when
/// the tuples overlap.
pub fn merge_sign(i: IndexSet, j: IndexSet) -> Option<i64> {
    if i.0 & j.0 != 0 {
        return None;
    }
    let inversions: u32 = i.indices().map(|a| j.indices().filter(|&b| a > b).count() as u32).sum();
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}

/// Marker for covariant objects (covectors, forms).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Co;

/// Marker for contravariant objects (multivectors).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Contra;

/// Homogeneous element of the exterior algebra with a parity tag.
#[derive(Clone, PartialEq, Debug)]
pub struct Graded<S, K> {
    degree: usize,
    parity: ParityTS,
    comps: Vec<S>,
    kind: PhantomData<K>,
}

pub type QCovector<S = f64> = Graded<S, Co>;
pub type QVector<S = f64> = Graded<S, Contra>;

impl<S: Scalar, K> Graded<S, K> {
    pub fn zero(degree: usize, parity: ParityTS) -> Self {
        assert!(degree <= 4, "degree {degree} > 4");
        Graded { degree, parity, comps: vec![S::zero(); dim(degree)], kind: PhantomData }
    }

    pub fn from_components(degree: usize, parity: ParityTS, comps: Vec<S>) -> Result<Self> {
        if degree > 4 {
            return Err(Error::DegreeOverflow(degree));
        }
        if comps.len() != dim(degree) {
            return Err(Error::Degree(format!(
                "degree {degree} needs {} components, got {}",
                dim(degree),
                comps.len()
            )));
        }
        Ok(Graded { degree, parity, comps, kind: PhantomData })
    }

    /// Unit element `dx^I` (or `e_I`).
    pub fn unit(set: IndexSet, parity: ParityTS) -> Self {
        let mut g = Self::zero(set.len(), parity);
        g.comps[set.position()] = S::one();
        g
    }

    /// Degree-0 element with the given value at the reference orientation.
    pub fn scalar(value: S, parity: ParityTS) -> Self {
        Graded { degree: 0, parity, comps: vec![value], kind: PhantomData }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn parity(&self) -> ParityTS {
        self.parity
    }

    pub fn components(&self) -> &[S] {
        &self.comps
    }

    pub fn component(&self, set: IndexSet) -> &S {
        &self.comps[set.position()]
    }

    pub fn set_component(&mut self, set: IndexSet, value: S) {
        assert_eq!(set.len(), self.degree);
        self.comps[set.position()] = value;
    }

    /// `(index tuple, component)` pairs in storage order.
    pub fn terms(&self) -> impl Iterator<Item = (IndexSet, &S)> {
        basis(self.degree).iter().copied().zip(self.comps.iter())
    }

    /// Same components reinterpreted with another parity.
    pub fn with_parity(mut self, parity: ParityTS) -> Self {
        self.parity = parity;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, k: &S) -> Self {
        Graded {
            degree: self.degree,
            parity: self.parity,
            comps: self.comps.iter().map(|c| c.clone() * k.clone()).collect(),
            kind: PhantomData,
        }
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::Degree(format!("{} vs {}", self.degree, other.degree)));
        }
        if self.parity != other.parity {
            return Err(Error::Parity { expected: self.parity, got: other.parity });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(S, S) -> S) -> Self {
        Graded {
            degree: self.degree,
            parity: self.parity,
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| f(a.clone(), b.clone()))
                .collect(),
            kind: PhantomData,
        }
    }

    /// Exterior product; parity combines componentwise.
    ///
    /// Uses the `1/(q! q'!)` normalisation, so `dx^I ∧ dx^J` is `±dx^{I∪J}`.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        let degree = self.degree + other.degree;
        if degree > 4 {
            return Err(Error::DegreeOverflow(degree));
        }
        let mut out = Self::zero(degree, self.parity.combine(other.parity));
        for (i, a) in self.terms() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.terms() {
                if b.is_zero() {
                    continue;
                }
                if let Some(sign) = merge_sign(i, j) {
                    let k = IndexSet(i.0 | j.0).position();
                    let term = a.clone() * b.clone() * S::from_i64(sign);
                    out.comps[k] = out.comps[k].clone() + term;
                }
            }
        }
        Ok(out)
    }

    /// Applies the inverse metric (covector) or the metric (vector) to every
    /// factor; both are the same diagonal sign pattern in the reference frame.
    fn metric_signs_applied(&self) -> Vec<S> {
        self.terms()
            .map(|(set, c)| {
                let sign: i64 = set.indices().map(|i| METRIC_SIGNS[i]).product();
                c.clone() * S::from_i64(sign)
            })
            .collect()
    }

    pub fn to_f64(&self) -> Graded<f64, K> {
        Graded {
            degree: self.degree,
            parity: self.parity,
            comps: self.comps.iter().map(Scalar::to_f64).collect(),
            kind: PhantomData,
        }
    }

    pub fn from_f64(g: &Graded<f64, K>) -> Self {
        Graded {
            degree: g.degree,
            parity: g.parity,
            comps: g.comps.iter().map(|&c| S::from_f64(c)).collect(),
            kind: PhantomData,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.comps.iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| (a.clone() - b.clone()).to_f64().abs())
            .fold(0.0, f64::max)
    }
}

impl<S: Scalar, K> Add for Graded<S, K> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("adding elements of different spaces")
    }
}

impl<S: Scalar, K> Sub for Graded<S, K> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.try_sub(&rhs).expect("subtracting elements of different spaces")
    }
}

impl<S: Scalar, K> Neg for Graded<S, K> {
    type Output = Self;
    fn neg(self) -> Self {
        let Graded { degree, parity, comps, kind } = self;
        Graded { degree, parity, comps: comps.into_iter().map(|c| -c).collect(), kind }
    }
}

impl<S: Scalar, K> Mul<S> for Graded<S, K> {
    type Output = Self;
    fn mul(self, k: S) -> Self {
        self.scale(&k)
    }
}

/// Determinant of the `q x q` block of the column matrix `vs` on `rows`.
fn block_det<S: Scalar>(vs: &[Vec4<S>], rows: &[usize]) -> S {
    let q = rows.len();
    match q {
        0 => S::one(),
        1 => vs[0].0[rows[0]].clone(),
        _ => {
            // expand along the first column
            let mut acc = S::zero();
            let rest = &vs[1..];
            for (k, &r) in rows.iter().enumerate() {
                let entry = vs[0].0[r].clone();
                if entry.is_zero() {
                    continue;
                }
                let sub: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
                let term = entry * block_det(rest, &sub);
                acc = if k % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

impl<S: Scalar> QCovector<S> {
    pub fn from_covec(c: &crate::spacetime::Covec4<S>, parity: ParityTS) -> Self {
        Graded { degree: 1, parity, comps: c.0.to_vec(), kind: PhantomData }
    }

    pub fn to_covec(&self) -> Result<crate::spacetime::Covec4<S>> {
        if self.degree != 1 {
            return Err(Error::Degree(format!("expected a 1-covector, got degree {}", self.degree)));
        }
        Ok(crate::spacetime::Covec4(std::array::from_fn(|i| self.comps[i].clone())))
    }

    /// Value on `(v_1, .., v_q, o)`.
    pub fn evaluate(&self, vs: &[Vec4<S>], o: OrientationClass) -> Result<S> {
        if vs.len() != self.degree {
            return Err(Error::Arity { expected: self.degree, got: vs.len() });
        }
        let mut acc = S::zero();
        for (set, a) in self.terms() {
            if a.is_zero() {
                continue;
            }
            let rows: Vec<usize> = set.indices().collect();
            acc = acc + a.clone() * block_det(vs, &rows);
        }
        Ok(acc * S::from_i64(self.parity.character(o)))
    }

    /// `∧^q g^-1`: raises every index, keeping the parity.
    pub fn raise(&self) -> QVector<S> {
        Graded { degree: self.degree, parity: self.parity, comps: self.metric_signs_applied(), kind: PhantomData }
    }
}

impl<S: Scalar> QVector<S> {
    /// Class of `(v_1, .., v_q, E)` in the space of the given parity.
    pub fn simple(vs: &[Vec4<S>], parity: ParityTS) -> Result<Self> {
        if vs.len() > 4 {
            return Err(Error::DegreeOverflow(vs.len()));
        }
        let q = vs.len();
        let comps = basis(q)
            .iter()
            .map(|set| {
                let rows: Vec<usize> = set.indices().collect();
                block_det(vs, &rows)
            })
            .collect();
        Ok(Graded { degree: q, parity, comps, kind: PhantomData })
    }

    /// Class of `(v_1, .., v_q, o)`; differs from [`QVector::simple`] by the
    /// parity character of `o`.
    pub fn simple_at(vs: &[Vec4<S>], o: OrientationClass, parity: ParityTS) -> Result<Self> {
        Ok(Self::simple(vs, parity)?.scale(&S::from_i64(parity.character(o))))
    }

    pub fn from_vec4(v: &Vec4<S>, parity: ParityTS) -> Self {
        Graded { degree: 1, parity, comps: v.0.to_vec(), kind: PhantomData }
    }

    pub fn to_vec4(&self) -> Result<Vec4<S>> {
        if self.degree != 1 {
            return Err(Error::Degree(format!("expected a 1-vector, got degree {}", self.degree)));
        }
        Ok(Vec4(std::array::from_fn(|i| self.comps[i].clone())))
    }

    /// `∧^q g`: lowers every index, keeping the parity.
    pub fn lower(&self) -> QCovector<S> {
        Graded { degree: self.degree, parity: self.parity, comps: self.metric_signs_applied(), kind: PhantomData }
    }
}

/// Evaluation of a covector on a multivector of the same degree and parity.
pub fn pair<S: Scalar>(a: &QCovector<S>, w: &QVector<S>) -> Result<S> {
    if a.degree != w.degree {
        return Err(Error::Degree(format!("pairing degree {} with degree {}", a.degree, w.degree)));
    }
    if a.parity != w.parity {
        return Err(Error::Parity { expected: a.parity, got: w.parity });
    }
    Ok(a.comps
        .iter()
        .zip(&w.comps)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone()))
}

/// Right interior multiplication `w ⌟ a`, characterised by
/// `<w ⌟ a, u> = <a, w ∧ u>`.
///
/// Equal degrees give the 0-covector `<a, w>` (with the combined parity).
pub fn interior_right<S: Scalar>(w: &QVector<S>, a: &QCovector<S>) -> Result<QCovector<S>> {
    if w.degree > a.degree {
        return Err(Error::Degree(format!(
            "interior product of a {}-vector into a {}-covector",
            w.degree, a.degree
        )));
    }
    let mut out: QCovector<S> = QCovector::zero(a.degree - w.degree, w.parity.combine(a.parity));
    for (i, wc) in w.terms() {
        if wc.is_zero() {
            continue;
        }
        for (k, ac) in a.terms() {
            if ac.is_zero() || k.0 & i.0 != i.0 {
                continue;
            }
            let j = IndexSet(k.0 & !i.0);
            let sign = merge_sign(i, j).expect("disjoint by construction");
            let pos = j.position();
            out.comps[pos] = out.comps[pos].clone() + wc.clone() * ac.clone() * S::from_i64(sign);
        }
    }
    Ok(out)
}

/// `∧^2 g^-1` on bicovectors. The component formula is applied for every
/// parity, not only `(e, e)`.
pub fn lift_g_inv_2<S: Scalar>(f: &QCovector<S>) -> Result<QVector<S>> {
    if f.degree != 2 {
        return Err(Error::Degree(format!("lift needs a 2-covector, got degree {}", f.degree)));
    }
    Ok(f.raise())
}

/// Metric volume covector, parity `(o, o)`.
///
/// On `(v_1..v_4, o)` it gives `±sqrt|det <g(v_k), v_l>|`, positive when the
/// ordinary orientation of the arguments agrees with that of `o`. In the
/// reference frame this is `dx0 ∧ dx1 ∧ dx2 ∧ dx3`.
pub fn volume_covector<S: Scalar>() -> QCovector<S> {
    QCovector::unit(IndexSet(0b1111), ParityTS::OO)
}

/// Covector of ordinary (non-relativistic) parity.
#[derive(Clone, PartialEq, Debug)]
pub struct OrdinaryCovector<S = f64> {
    pub parity: Parity,
    pub inner: QCovector<S>,
}

impl<S: Scalar> OrdinaryCovector<S> {
    pub fn new(degree: usize, parity: Parity, comps: Vec<S>) -> Result<Self> {
        Ok(OrdinaryCovector { parity, inner: QCovector::from_components(degree, ParityTS::EE, comps)? })
    }

    /// Value on `(v_1..v_q, o)` for an ordinary orientation `o`.
    pub fn evaluate(&self, vs: &[Vec4<S>], o: GLComponent) -> Result<S> {
        let v = self.inner.clone().with_parity(ParityTS::EE).evaluate(vs, OrientationClass::E)?;
        Ok(v * S::from_i64(self.parity.gl_character(o)))
    }
}

/// Even covectors become `(e, e)`, odd ones `(o, o)`.
pub fn embed_plain<S: Scalar>(a: &OrdinaryCovector<S>) -> QCovector<S> {
    let parity = ParityTS::new(a.parity, a.parity);
    a.inner.clone().with_parity(parity)
}

/// Inverse of [`embed_plain`]; mixed parities have no ordinary counterpart.
pub fn restrict_plain<S: Scalar>(a: &QCovector<S>) -> Result<OrdinaryCovector<S>> {
    if a.parity.t != a.parity.s {
        return Err(Error::Invalid(format!("parity {} has no ordinary counterpart", a.parity)));
    }
    Ok(OrdinaryCovector { parity: a.parity.t, inner: a.clone().with_parity(ParityTS::EE) })
}

impl<S: Scalar, K: KindName> fmt::Display for Graded<S, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (set, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({:?}) {}{}", c, K::SYMBOL, set.label())?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " [{}]", self.parity)
    }
}

pub trait KindName {
    const SYMBOL: &'static str;
}

impl KindName for Co {
    const SYMBOL: &'static str = "dx";
}

impl KindName for Contra {
    const SYMBOL: &'static str = "e";
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};

    fn dx(label: &str) -> QCovector<Rational> {
        QCovector::unit(IndexSet::parse_label(label).unwrap(), ParityTS::EE)
    }

    fn ev(label: &str) -> QVector<Rational> {
        QVector::unit(IndexSet::parse_label(label).unwrap(), ParityTS::EE)
    }

    fn e(k: usize) -> Vec4<Rational> {
        Vec4::basis(k)
    }

    #[test]
    fn basis_is_lexicographic() {
        let labels: Vec<String> = basis(2).iter().map(|s| s.label()).collect();
        assert_eq!(labels, ["01", "02", "03", "12", "13", "23"]);
        let labels: Vec<String> = basis(3).iter().map(|s| s.label()).collect();
        assert_eq!(labels, ["012", "013", "023", "123"]);
    }

    #[test]
    fn parity_rule() {
        assert_eq!(ParityTS::OE.combine(ParityTS::OE), ParityTS::EE);
        assert_eq!(ParityTS::OE.combine(ParityTS::EO), ParityTS::OO);
        assert_eq!(ParityTS::EE.combine(ParityTS::EO), ParityTS::EO);
    }

    #[test]
    fn evaluation_examples() {
        let one = Rational::from_i64(1);
        assert_eq!(dx("0").evaluate(&[e(0)], OrientationClass::T).unwrap(), one);
        let odd_scalar = QCovector::scalar(one.clone(), ParityTS::OE);
        assert_eq!(odd_scalar.evaluate(&[], OrientationClass::T).unwrap(), -one.clone());
        assert_eq!(dx("01").evaluate(&[e(1), e(0)], OrientationClass::E).unwrap(), -one);
        assert_eq!(
            dx("01").evaluate(&[e(0)], OrientationClass::E),
            Err(Error::Arity { expected: 2, got: 1 })
        );
    }

    #[test]
    fn wedge_examples() {
        let w = dx("0").wedge(&dx("1")).unwrap();
        assert_eq!(w.evaluate(&[e(0), e(1)], OrientationClass::E).unwrap(), ratio(1, 1));
        assert!(dx("0").wedge(&dx("0")).unwrap().is_zero());
        assert!(ev("2").wedge(&ev("2")).unwrap().is_zero());
        assert_eq!(dx("012").wedge(&dx("13")), Err(Error::DegreeOverflow(5)));
        let a = QVector::<Rational>::unit(IndexSet::parse_label("0").unwrap(), ParityTS::OE);
        assert_eq!(a.wedge(&a.clone()).unwrap().parity(), ParityTS::EE);
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pair(&dx("0"), &ev("0")).unwrap(), ratio(1, 1));
        let w = ev("0").wedge(&ev("1")).unwrap();
        assert_eq!(pair(&dx("01"), &w).unwrap(), ratio(1, 1));
        let odd = ev("01").with_parity(ParityTS::OE);
        assert!(matches!(pair(&dx("01"), &odd), Err(Error::Parity { .. })));
        assert!(matches!(pair(&dx("01"), &ev("0")), Err(Error::Degree(_))));
    }

    #[test]
    fn pairing_matches_evaluation_on_simple_vectors() {
        let vs = [
            Vec4::new(ratio(1, 2), ratio(3, 1), ratio(0, 1), ratio(-1, 1)),
            Vec4::new(ratio(2, 1), ratio(-1, 3), ratio(5, 1), ratio(1, 7)),
        ];
        let a = dx("01") * ratio(3, 1) + dx("13") * ratio(-2, 5) + dx("23");
        let w = QVector::simple(&vs, ParityTS::EE).unwrap();
        assert_eq!(pair(&a, &w).unwrap(), a.evaluate(&vs, OrientationClass::E).unwrap());
    }

    #[test]
    fn interior_examples() {
        let r = interior_right(&ev("0"), &dx("01")).unwrap();
        assert_eq!(r, dx("1"));
        assert!(interior_right(&ev("2"), &dx("01")).unwrap().is_zero());
        assert!(interior_right(&ev("012"), &dx("01")).is_err());
        let same = interior_right(&ev("01"), &(dx("01") * ratio(7, 1))).unwrap();
        assert_eq!(same.degree(), 0);
        assert_eq!(same.components()[0], ratio(7, 1));
    }

    #[test]
    fn lift_examples() {
        assert_eq!(lift_g_inv_2(&dx("01")).unwrap(), -ev("01"));
        assert_eq!(lift_g_inv_2(&dx("23")).unwrap(), ev("23"));
        assert!(lift_g_inv_2(&dx("0")).is_err());
    }

    #[test]
    fn volume_examples() {
        let vol = volume_covector::<Rational>();
        let frame = [e(0), e(1), e(2), e(3)];
        assert_eq!(vol.evaluate(&frame, OrientationClass::E).unwrap(), ratio(1, 1));
        let swapped = [e(1), e(0), e(2), e(3)];
        assert_eq!(vol.evaluate(&swapped, OrientationClass::E).unwrap(), ratio(-1, 1));
        assert_eq!(vol.evaluate(&frame, OrientationClass::S).unwrap(), ratio(-1, 1));
        let dependent = [e(0), e(1), e(1), e(3)];
        assert_eq!(vol.evaluate(&dependent, OrientationClass::E).unwrap(), ratio(0, 1));
    }

    #[test]
    fn embedding_round_trip() {
        let even = OrdinaryCovector::new(2, Parity::Even, vec![ratio(1, 1); 6]).unwrap();
        let odd = OrdinaryCovector::new(1, Parity::Odd, vec![ratio(2, 1); 4]).unwrap();
        assert_eq!(embed_plain(&even).parity(), ParityTS::EE);
        assert_eq!(embed_plain(&odd).parity(), ParityTS::OO);
        assert_eq!(embed_plain(&odd).components(), odd.inner.components());
        assert_eq!(restrict_plain(&embed_plain(&odd)).unwrap(), odd);
        assert!(restrict_plain(&dx("0").with_parity(ParityTS::OE)).is_err());
    }

    #[test]
    fn index_labels() {
        let s = IndexSet::parse_label("013").unwrap();
        assert_eq!(s.label(), "013");
        assert!(IndexSet::parse_label("10").is_err());
        assert!(IndexSet::parse_label("04").is_err());
        assert_eq!(merge_sign(IndexSet::parse_label("1").unwrap(), IndexSet::parse_label("0").unwrap()), Some(-1));
    }
}
