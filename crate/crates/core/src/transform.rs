//! Action of the full Lorentz and Poincaré groups on parity-typed objects.
//!
//! A Lorentz transformation `ρ` in component `c` multiplies objects of parity
//! `(t, s)` by the index `idx_{t,s}(c)` on top of the slot-wise linear action.
//! For forms on space-time the pullback by a Poincaré map `φ` also
//! substitutes coordinates, which is done exactly for polynomial forms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{basis, IndexSet, Parity, ParityTS, QCovector, QVector};
use crate::fields::{
    constitutive_residual, maxwell_residuals, potential_residual, EMSystem, FormField,
    PolyForm, SampledForm, Scheme,
};
use crate::scalar::{parse_rational, Rational, Scalar};
use crate::spacetime::{classify_lorentz, LinMap4, OrientationClass, Vec4};

/// `idx_{t,s}(ρ)` for `ρ` in component `c`.
pub fn idx(c: OrientationClass, parity: ParityTS) -> i64 {
    parity.character(c)
}

/// Matrix of `∧^q m` on increasing index tuples: entry `[J][I]` is the minor
/// of `m` on rows `J` and columns `I`.
pub fn compound<S: Scalar>(m: &LinMap4<S>, q: usize) -> Vec<Vec<S>> {
    let b = basis(q);
    b.iter()
        .map(|rows| {
            let r: Vec<usize> = rows.indices().collect();
            b.iter()
                .map(|cols| {
                    let c: Vec<usize> = cols.indices().collect();
                    m.minor(&r, &c)
                })
                .collect()
        })
        .collect()
}

/// Inverse of a Lorentz transformation together with its component.
fn lorentz_parts<S: Scalar>(rho: &LinMap4<S>) -> Result<(OrientationClass, LinMap4<S>)> {
    let class = classify_lorentz(rho)?;
    Ok((class, rho.inverse()?))
}

fn pullback_with<S: Scalar>(class: OrientationClass, rho_inv: &LinMap4<S>, a: &QCovector<S>) -> QCovector<S> {
    let q = a.degree();
    let sign = S::from_i64(idx(class, a.parity()));
    let b = basis(q);
    let mut out = QCovector::zero(q, a.parity());
    for &j in b {
        let cols: Vec<usize> = j.indices().collect();
        let mut acc = S::zero();
        for (i, ai) in a.terms() {
            if ai.is_zero() {
                continue;
            }
            let rows: Vec<usize> = i.indices().collect();
            acc = acc + ai.clone() * rho_inv.minor(&rows, &cols);
        }
        out.set_component(j, acc * sign.clone());
    }
    out
}

/// `(ρ⁻¹)^* a`: `(v_1..v_q, o) -> idx · a(ρ⁻¹ v_1, .., ρ⁻¹ v_q, o)`.
pub fn pullback_covector<S: Scalar>(rho: &LinMap4<S>, a: &QCovector<S>) -> Result<QCovector<S>> {
    let (class, inv) = lorentz_parts(rho)?;
    Ok(pullback_with(class, &inv, a))
}

/// `ρ_* w`: each slot pushed through `ρ`, scaled by the index.
pub fn pushforward_vector<S: Scalar>(rho: &LinMap4<S>, w: &QVector<S>) -> Result<QVector<S>> {
    let class = classify_lorentz(rho)?;
    let q = w.degree();
    let sign = S::from_i64(idx(class, w.parity()));
    let mut out = QVector::zero(q, w.parity());
    for &j in basis(q) {
        let rows: Vec<usize> = j.indices().collect();
        let mut acc = S::zero();
        for (i, wi) in w.terms() {
            if wi.is_zero() {
                continue;
            }
            let cols: Vec<usize> = i.indices().collect();
            acc = acc + rho.minor(&rows, &cols) * wi.clone();
        }
        out.set_component(j, acc * sign.clone());
    }
    Ok(out)
}

/// Affine map `x -> ρ x + b` with Lorentz linear part.
#[derive(Clone, PartialEq, Debug)]
pub struct PoincareMap<S = f64> {
    linear: LinMap4<S>,
    translation: Vec4<S>,
}

impl<S: Scalar> PoincareMap<S> {
    pub fn new(linear: LinMap4<S>, translation: Vec4<S>) -> Result<Self> {
        classify_lorentz(&linear)?;
        Ok(PoincareMap { linear, translation })
    }

    pub fn identity() -> Self {
        PoincareMap { linear: LinMap4::identity(), translation: Vec4::zero() }
    }

    pub fn translation_by(b: Vec4<S>) -> Self {
        PoincareMap { linear: LinMap4::identity(), translation: b }
    }

    pub fn lorentz(linear: LinMap4<S>) -> Result<Self> {
        Self::new(linear, Vec4::zero())
    }

    pub fn linear(&self) -> &LinMap4<S> {
        &self.linear
    }

    pub fn translation(&self) -> &Vec4<S> {
        &self.translation
    }

    /// Component of the linear part.
    pub fn class(&self) -> OrientationClass {
        classify_lorentz(&self.linear).expect("linear part checked on construction")
    }

    pub fn apply(&self, x: &Vec4<S>) -> Vec4<S> {
        self.linear.apply(x) + self.translation.clone()
    }

    pub fn inverse(&self) -> Self {
        let inv = self.linear.inverse().expect("Lorentz maps are invertible");
        let translation = -inv.apply(&self.translation);
        PoincareMap { linear: inv, translation }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        PoincareMap {
            linear: self.linear.compose(&other.linear),
            translation: self.apply(&other.translation),
        }
    }

    pub fn to_f64(&self) -> PoincareMap<f64> {
        PoincareMap { linear: self.linear.to_f64(), translation: self.translation.to_f64() }
    }
}

impl PoincareMap<f64> {
    /// Exact rational image of the floating-point entries.
    pub fn to_rational(&self) -> PoincareMap<Rational> {
        PoincareMap { linear: LinMap4::from_f64(&self.linear), translation: Vec4::from_f64(&self.translation) }
    }
}

/// Number or exact rational string, as accepted in map files.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Number(f64),
    Exact(String),
}

impl Entry {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            Entry::Number(x) if x.is_finite() => Ok(Rational::from_f64(*x)),
            Entry::Number(x) => Err(Error::Invalid(format!("non-finite map entry {x}"))),
            Entry::Exact(s) => parse_rational(s).ok_or_else(|| Error::Invalid(format!("bad map entry '{s}'"))),
        }
    }
}

/// JSON form `{"matrix": [[..]; 4], "translation": [..; 4]}`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoincareSpec {
    pub matrix: [[Entry; 4]; 4],
    #[serde(default = "zero_translation")]
    pub translation: [Entry; 4],
}

fn zero_translation() -> [Entry; 4] {
    std::array::from_fn(|_| Entry::Number(0.0))
}

impl PoincareSpec {
    /// Exact map; entries given as numbers are taken at their binary value,
    /// so a float boost is only approximately Lorentz.
    pub fn to_exact(&self) -> Result<PoincareMap<Rational>> {
        let mut m: [[Rational; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| Rational::from_i64(0)));
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                m[i][j] = e.to_rational()?;
            }
        }
        let mut b: [Rational; 4] = std::array::from_fn(|_| Rational::from_i64(0));
        for (i, e) in self.translation.iter().enumerate() {
            b[i] = e.to_rational()?;
        }
        PoincareMap::new(LinMap4::from_rows(m), Vec4(b))
    }

    pub fn to_f64(&self) -> Result<PoincareMap<f64>> {
        let exact = self.to_exact()?;
        PoincareMap::new(exact.linear.to_f64(), exact.translation.to_f64())
    }

    pub fn from_map(map: &PoincareMap<f64>) -> Self {
        PoincareSpec {
            matrix: std::array::from_fn(|i| std::array::from_fn(|j| Entry::Number(map.linear.m[i][j]))),
            translation: std::array::from_fn(|i| Entry::Number(map.translation.0[i])),
        }
    }
}

/// Representative of each Lorentz component: `E` identity, `T` time
/// reflection, `S` reflection of `x^1`, `TS` total reflection.
pub fn representative<S: Scalar>(c: OrientationClass) -> LinMap4<S> {
    match c {
        OrientationClass::E => LinMap4::identity(),
        OrientationClass::T => LinMap4::time_reflection(),
        OrientationClass::S => LinMap4::space_reflection(),
        OrientationClass::TS => LinMap4::total_reflection(),
    }
}

/// Forms that can be pulled back by a Poincaré map.
pub trait PullbackForm: FormField + Sized {
    type Scalar: Scalar;

    /// `(φ⁻¹)^* A`: `(x, v.., o) -> idx · A(φ⁻¹ x, ρ⁻¹ v.., o)`.
    fn pullback_by_inverse(&self, phi: &PoincareMap<Self::Scalar>) -> Result<Self>;
}

impl PullbackForm for PolyForm {
    type Scalar = Rational;

    fn pullback_by_inverse(&self, phi: &PoincareMap<Rational>) -> Result<PolyForm> {
        let (class, inv) = lorentz_parts(&phi.linear)?;
        let shift = -inv.apply(&phi.translation);
        let substituted = self.map_coefficients(|p| p.compose_affine(&inv, &shift));
        let parity = self.parity();
        substituted.map_linear(self.degree(), parity, |set: IndexSet| {
            Ok(pullback_with(class, &inv, &QCovector::unit(set, parity)))
        })
    }
}

impl PullbackForm for SampledForm {
    type Scalar = f64;

    fn pullback_by_inverse(&self, phi: &PoincareMap<f64>) -> Result<SampledForm> {
        let (class, inv) = lorentz_parts(&phi.linear)?;
        let back = phi.inverse();
        let inner = self.clone();
        Ok(SampledForm::new(self.degree(), self.parity(), move |x| {
            Ok(pullback_with(class, &inv, &inner.covector_at(&back.apply(x))?))
        }))
    }
}

/// `(φ⁻¹)^* A`.
pub fn pullback_form<F: PullbackForm>(phi: &PoincareMap<F::Scalar>, a: &F) -> Result<F> {
    a.pullback_by_inverse(phi)
}

/// Sign one object of a system picks up under `φ^*`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SignRule {
    pub object: String,
    pub parity: String,
    /// `idx` of the linear part for this parity.
    pub sign: i64,
    /// Sign of the published rule for time-reflecting maps, where one exists.
    pub printed_sign: Option<i64>,
    /// Factor the published rule omits: `-1` for odd spatial parity under a
    /// space-reversing map.
    pub spatial_factor: i64,
    pub matches_printed: bool,
}

fn sign_rules(class: OrientationClass, scheme: Scheme) -> Vec<SignRule> {
    let fp = scheme.field_parity();
    let sp = scheme.source_parity();
    let entries = [("F", fp), ("A", fp), ("G", sp), ("J", sp)];
    entries
        .iter()
        .map(|&(object, parity)| {
            let sign = idx(class, parity);
            let spatial_factor = if class.reverses_space() && parity.s == Parity::Odd { -1 } else { 1 };
            let printed_sign = class.reverses_time().then(|| match (scheme, object) {
                (Scheme::One, "F" | "A") | (Scheme::Two, "G" | "J") => 1,
                _ => -1,
            });
            let matches_printed = printed_sign.is_none_or(|p| p * spatial_factor == sign);
            SignRule { object: object.into(), parity: parity.to_string(), sign, printed_sign, spatial_factor, matches_printed }
        })
        .collect()
}

/// `φ^*` of all four objects of the system, with the signs they acquire.
pub fn apply_scheme<F: PullbackForm>(
    phi: &PoincareMap<F::Scalar>,
    sys: &EMSystem<F>,
) -> Result<(EMSystem<F>, Vec<SignRule>)> {
    sys.check_consistency()?;
    let back = phi.inverse();
    let out = EMSystem {
        potential: pullback_form(&back, &sys.potential)?,
        field: pullback_form(&back, &sys.field)?,
        induction: pullback_form(&back, &sys.induction)?,
        current: pullback_form(&back, &sys.current)?,
        scheme: sys.scheme,
        c: sys.c,
    };
    Ok((out, sign_rules(phi.class(), sys.scheme)))
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct LawResidual {
    pub law: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl LawResidual {
    fn new(law: &str, residual: f64, tolerance: f64) -> Self {
        LawResidual { law: law.into(), residual, tolerance, passed: residual <= tolerance }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct CovarianceReport {
    pub component: String,
    pub scheme: u8,
    pub exact: bool,
    pub laws: Vec<LawResidual>,
    pub signs: Vec<SignRule>,
    pub passed: bool,
}

pub const LAW_NAMES: [&str; 4] = ["homogeneous_maxwell", "inhomogeneous_maxwell", "constitutive", "potential"];

fn poly_residuals(sys: &EMSystem<PolyForm>) -> Result<[f64; 4]> {
    let (hom, inhom) = maxwell_residuals(sys)?;
    Ok([
        hom.max_abs_coefficient(),
        inhom.max_abs_coefficient(),
        constitutive_residual(sys)?.max_abs_coefficient(),
        potential_residual(sys)?.max_abs_coefficient(),
    ])
}

/// Checks that `φ^*` of a polynomial solution is again a solution, exactly.
///
/// A system that is not itself a solution is refused as invalid input.
pub fn check_covariance(sys: &EMSystem<PolyForm>, phi: &PoincareMap<Rational>) -> Result<CovarianceReport> {
    sys.check_consistency()?;
    let before = poly_residuals(sys)?;
    if let Some(k) = before.iter().position(|&r| r != 0.0) {
        return Err(Error::Invalid(format!("input system violates {} (residual {:e})", LAW_NAMES[k], before[k])));
    }
    let (moved, signs) = apply_scheme(phi, sys)?;
    let after = poly_residuals(&moved)?;
    let laws: Vec<LawResidual> = LAW_NAMES.iter().zip(after).map(|(n, r)| LawResidual::new(n, r, 0.0)).collect();
    let passed = laws.iter().all(|l| l.passed) && signs.iter().all(|s| s.matches_printed);
    Ok(CovarianceReport { component: phi.class().to_string(), scheme: sys.scheme.number(), exact: true, laws, signs, passed })
}

/// Residual norms of a sampled system at the given points, using the
/// Richardson combination of central differences with steps `h` and `h/2`.
/// Also returns the largest field or induction magnitude seen.
pub fn sampled_residuals(sys: &EMSystem<SampledForm>, points: &[Vec4<f64>], h: f64) -> Result<([f64; 4], f64)> {
    let coarse = sys.numeric_residuals(h)?;
    let fine = sys.numeric_residuals(h / 2.0)?;
    let mut worst = [0.0f64; 4];
    let mut scale = 0.0f64;
    for x in points {
        scale = scale.max(sys.field.covector_at(x)?.max_abs()).max(sys.induction.covector_at(x)?.max_abs());
        for k in 0..4 {
            let rc = coarse[k].covector_at(x)?;
            let rf = fine[k].covector_at(x)?;
            let extrapolated = (rf.scale(&4.0) - rc).scale(&(1.0 / 3.0));
            worst[k] = worst[k].max(extrapolated.max_abs());
        }
    }
    Ok((worst, scale))
}

/// Relative tolerance of sampled covariance checks.
pub const SAMPLED_REL_TOL: f64 = 1e-6;

/// Sampled counterpart of [`check_covariance`], evaluated at `points`
/// (given in the transformed coordinates).
pub fn check_covariance_sampled(
    sys: &EMSystem<SampledForm>,
    phi: &PoincareMap<f64>,
    points: &[Vec4<f64>],
    h: f64,
) -> Result<CovarianceReport> {
    if points.is_empty() {
        return Err(Error::Invalid("no sample points".into()));
    }
    let image: Vec<Vec4<f64>> = points.iter().map(|x| phi.apply(x)).collect();
    let (before, scale) = sampled_residuals(sys, &image, h)?;
    let tol = SAMPLED_REL_TOL * scale.max(1.0);
    if let Some(k) = before.iter().position(|&r| r > tol) {
        return Err(Error::Invalid(format!("input system violates {} (residual {:e})", LAW_NAMES[k], before[k])));
    }
    let (moved, signs) = apply_scheme(phi, sys)?;
    let (after, _) = sampled_residuals(&moved, points, h)?;
    let laws: Vec<LawResidual> = LAW_NAMES.iter().zip(after).map(|(n, r)| LawResidual::new(n, r, tol)).collect();
    let passed = laws.iter().all(|l| l.passed) && signs.iter().all(|s| s.matches_printed);
    Ok(CovarianceReport { component: phi.class().to_string(), scheme: sys.scheme.number(), exact: false, laws, signs, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::pair;
    use crate::fields::plane_wave_system;
    use crate::poly::PolyScalar;
    use crate::scalar::ratio;

    fn dx(label: &str, parity: ParityTS) -> QCovector<Rational> {
        QCovector::unit(IndexSet::parse_label(label).unwrap(), parity)
    }

    #[test]
    fn index_examples() {
        assert_eq!(idx(OrientationClass::T, ParityTS::OE), -1);
        assert_eq!(idx(OrientationClass::TS, ParityTS::OO), 1);
        for p in ParityTS::ALL {
            assert_eq!(idx(OrientationClass::E, p), 1);
        }
    }

    #[test]
    fn time_reflection_of_dx0() {
        let t = LinMap4::<Rational>::time_reflection();
        let b = pullback_covector(&t, &dx("0", ParityTS::EE)).unwrap();
        assert_eq!(b, -dx("0", ParityTS::EE));
        let one = QCovector::scalar(ratio(1, 1), ParityTS::OE);
        assert_eq!(pullback_covector(&t, &one).unwrap().components(), &[ratio(-1, 1)]);
    }

    #[test]
    fn non_lorentz_is_refused() {
        let m = LinMap4::<f64>::diag([2, 1, 1, 1]);
        assert!(matches!(pullback_covector(&m, &QCovector::scalar(1.0, ParityTS::EE)), Err(Error::NotLorentz { .. })));
        assert!(PoincareMap::lorentz(m).is_err());
    }

    #[test]
    fn exact_pairing_invariance_under_boost() {
        let rho = LinMap4::boost_hyperbolic(1, ratio(5, 4), ratio(3, 4)).compose(&LinMap4::total_reflection());
        let a = dx("01", ParityTS::EO) + dx("23", ParityTS::EO) * ratio(2, 1);
        let w = QVector::simple(
            &[Vec4::new(ratio(1, 1), ratio(2, 1), ratio(0, 1), ratio(1, 3)), Vec4::basis(3)],
            ParityTS::EO,
        )
        .unwrap();
        let lhs = pair(&pullback_covector(&rho, &a).unwrap(), &pushforward_vector(&rho, &w).unwrap()).unwrap();
        assert_eq!(lhs, pair(&a, &w).unwrap());
    }

    #[test]
    fn translation_substitutes_coordinates() {
        let a = PolyForm::term(PolyScalar::var(1), IndexSet::parse_label("0").unwrap(), ParityTS::EE);
        let b = Vec4::new(ratio(0, 1), ratio(3, 2), ratio(0, 1), ratio(0, 1));
        let out = pullback_form(&PoincareMap::translation_by(b), &a).unwrap();
        let expected = PolyForm::term(
            PolyScalar::var(1) - PolyScalar::constant(ratio(3, 2)),
            IndexSet::parse_label("0").unwrap(),
            ParityTS::EE,
        );
        assert_eq!(out, expected);
    }

    #[test]
    fn printed_signs_under_time_reflection() {
        let t = PoincareMap::<Rational>::lorentz(LinMap4::time_reflection()).unwrap();
        for scheme in [Scheme::One, Scheme::Two] {
            let sys = plane_wave_system(scheme, ratio(1, 1), ratio(1, 2), 1.0).unwrap();
            let report = check_covariance(&sys, &t).unwrap();
            assert!(report.passed, "{report:?}");
            let signs: Vec<i64> = report.signs.iter().map(|s| s.sign).collect();
            match scheme {
                Scheme::One => assert_eq!(signs, [1, 1, -1, -1]),
                Scheme::Two => assert_eq!(signs, [-1, -1, 1, 1]),
            }
        }
    }

    #[test]
    fn total_reflection_needs_spatial_factor() {
        let rules = sign_rules(OrientationClass::TS, Scheme::One);
        let g = &rules[2];
        assert_eq!((g.sign, g.printed_sign, g.spatial_factor), (1, Some(-1), -1));
        assert!(g.matches_printed);
    }

    #[test]
    fn mismatched_system_is_invalid_input() {
        let mut sys = plane_wave_system(Scheme::One, ratio(1, 1), ratio(1, 1), 1.0).unwrap();
        sys.induction = sys.induction.clone().with_parity(ParityTS::EO);
        let phi = PoincareMap::<Rational>::identity();
        assert!(matches!(check_covariance(&sys, &phi), Err(Error::Scheme(_))));
    }

    #[test]
    fn spec_json_accepts_exact_entries() {
        let text = r#"{"matrix":[["5/4","3/4",0,0],["3/4","5/4",0,0],[0,0,1,0],[0,0,0,1]],"translation":[1,0,0,"1/3"]}"#;
        let spec: PoincareSpec = serde_json::from_str(text).unwrap();
        let map = spec.to_exact().unwrap();
        assert!(map.linear().is_exactly_lorentz());
        assert_eq!(map.translation().0[3], ratio(1, 3));
    }
}
