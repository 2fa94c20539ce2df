//! Minkowski linear algebra: vectors, the metric of signature (+,-,-,-),
//! light-cone regions and the component structure of the linear and
//! Lorentz groups.
//!
//! Components are always taken relative to one fixed reference Lorentz frame
//! whose orientation is the reference orientation `E`. Orientations are then
//! elements of the Klein four-group, see [`OrientationClass`].

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Diagonal of the metric in the reference frame.
pub const METRIC_SIGNS: [i64; 4] = [1, -1, -1, -1];

/// Default tolerance for [`LinMap4::is_lorentz`] when classifying floats.
pub const LORENTZ_TOL: f64 = 1e-9;

/// Determinants at or below this magnitude are treated as singular.
pub const SINGULAR_TOL: f64 = 1e-12;

/// Relative null tolerance; the absolute threshold is this times the squared
/// largest component.
pub const NULL_TOL: f64 = 1e-12;

#[derive(Clone, PartialEq, Debug)]
pub struct Vec4<S = f64>(pub [S; 4]);

/// Element of the dual space, acting on [`Vec4`] by contraction.
#[derive(Clone, PartialEq, Debug)]
pub struct Covec4<S = f64>(pub [S; 4]);

impl<S: Scalar> Vec4<S> {
    pub fn new(v0: S, v1: S, v2: S, v3: S) -> Self {
        Vec4([v0, v1, v2, v3])
    }

    pub fn zero() -> Self {
        Vec4(std::array::from_fn(|_| S::zero()))
    }

    /// Reference basis vector `e_k`.
    pub fn basis(k: usize) -> Self {
        Vec4(std::array::from_fn(|i| if i == k { S::one() } else { S::zero() }))
    }

    /// Lowers the index with the metric.
    pub fn lower(&self) -> Covec4<S> {
        Covec4(std::array::from_fn(|i| {
            self.0[i].clone() * S::from_i64(METRIC_SIGNS[i])
        }))
    }

    pub fn to_f64(&self) -> Vec4<f64> {
        Vec4(std::array::from_fn(|i| self.0[i].to_f64()))
    }

    pub fn from_f64(v: &Vec4<f64>) -> Self {
        Vec4(std::array::from_fn(|i| S::from_f64(v.0[i])))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max)
    }
}

impl Vec4<f64> {
    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }
}

impl<S: Scalar> Covec4<S> {
    pub fn apply(&self, v: &Vec4<S>) -> S {
        (0..4).fold(S::zero(), |acc, i| acc + self.0[i].clone() * v.0[i].clone())
    }

    /// Raises the index with the inverse metric.
    pub fn raise(&self) -> Vec4<S> {
        Vec4(std::array::from_fn(|i| {
            self.0[i].clone() * S::from_i64(METRIC_SIGNS[i])
        }))
    }
}

impl<S> Index<usize> for Vec4<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.0[i]
    }
}

impl<S> IndexMut<usize> for Vec4<S> {
    fn index_mut(&mut self, i: usize) -> &mut S {
        &mut self.0[i]
    }
}

impl<S: Scalar> Add for Vec4<S> {
    type Output = Vec4<S>;
    fn add(self, rhs: Self) -> Self {
        let [a0, a1, a2, a3] = self.0;
        let [b0, b1, b2, b3] = rhs.0;
        Vec4([a0 + b0, a1 + b1, a2 + b2, a3 + b3])
    }
}

impl<S: Scalar> Sub for Vec4<S> {
    type Output = Vec4<S>;
    fn sub(self, rhs: Self) -> Self {
        let [a0, a1, a2, a3] = self.0;
        let [b0, b1, b2, b3] = rhs.0;
        Vec4([a0 - b0, a1 - b1, a2 - b2, a3 - b3])
    }
}

impl<S: Scalar> Neg for Vec4<S> {
    type Output = Vec4<S>;
    fn neg(self) -> Self {
        Vec4(self.0.map(|c| -c))
    }
}

impl<S: Scalar> Mul<S> for Vec4<S> {
    type Output = Vec4<S>;
    fn mul(self, k: S) -> Self {
        Vec4(self.0.map(|c| c * k.clone()))
    }
}

/// `<g(u), v> = u0 v0 - u1 v1 - u2 v2 - u3 v3`.
pub fn metric_pair<S: Scalar>(u: &Vec4<S>, v: &Vec4<S>) -> S {
    u.lower().apply(v)
}

/// Regions cut out of `V` by the light cone.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum ConeRegion {
    /// Time-like cone containing `(1, 0, 0, 0)`.
    TI1,
    /// The opposite time-like cone.
    TI2,
    SP,
    LC,
}

pub fn cone_region<S: Scalar>(v: &Vec4<S>, eps_null: f64) -> ConeRegion {
    let n = metric_pair(v, v).to_f64();
    if n.abs() <= eps_null {
        ConeRegion::LC
    } else if n < 0.0 {
        ConeRegion::SP
    } else if v.0[0] > S::zero() {
        ConeRegion::TI1
    } else {
        ConeRegion::TI2
    }
}

/// [`cone_region`] with the null threshold scaled to the vector's magnitude.
pub fn cone_region_default<S: Scalar>(v: &Vec4<S>) -> ConeRegion {
    let scale = v.max_abs();
    cone_region(v, NULL_TOL * scale * scale)
}

pub fn is_timelike<S: Scalar>(v: &Vec4<S>) -> bool {
    matches!(cone_region_default(v), ConeRegion::TI1 | ConeRegion::TI2)
}

/// Connected components of the general linear group.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum GLComponent {
    E,
    P,
}

impl Mul for GLComponent {
    type Output = GLComponent;
    fn mul(self, rhs: Self) -> Self {
        if self == rhs {
            GLComponent::E
        } else {
            GLComponent::P
        }
    }
}

/// Component of the Lorentz group, equivalently an orientation relative to
/// the reference orientation. Multiplication is the Klein four-group law.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum OrientationClass {
    E,
    T,
    S,
    TS,
}

impl OrientationClass {
    pub const ALL: [OrientationClass; 4] = [Self::E, Self::T, Self::S, Self::TS];

    pub fn from_flips(time: bool, space: bool) -> Self {
        match (time, space) {
            (false, false) => Self::E,
            (true, false) => Self::T,
            (false, true) => Self::S,
            (true, true) => Self::TS,
        }
    }

    pub fn reverses_time(self) -> bool {
        matches!(self, Self::T | Self::TS)
    }

    pub fn reverses_space(self) -> bool {
        matches!(self, Self::S | Self::TS)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::E => "E",
            Self::T => "T",
            Self::S => "S",
            Self::TS => "TS",
        }
    }
}

impl Mul for OrientationClass {
    type Output = OrientationClass;
    fn mul(self, rhs: Self) -> Self {
        Self::from_flips(
            self.reverses_time() ^ rhs.reverses_time(),
            self.reverses_space() ^ rhs.reverses_space(),
        )
    }
}

impl fmt::Display for OrientationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// T and S reverse the ordinary orientation, E and TS keep it.
pub fn project_orientation(o: OrientationClass) -> GLComponent {
    match o {
        OrientationClass::E | OrientationClass::TS => GLComponent::E,
        OrientationClass::T | OrientationClass::S => GLComponent::P,
    }
}

/// 4x4 matrix acting on reference-frame components: `(rho v)^i = m[i][j] v^j`.
#[derive(Clone, PartialEq, Debug)]
pub struct LinMap4<S = f64> {
    pub m: [[S; 4]; 4],
}

impl<S: Scalar> LinMap4<S> {
    pub fn from_rows(m: [[S; 4]; 4]) -> Self {
        LinMap4 { m }
    }

    pub fn identity() -> Self {
        Self::diag([1, 1, 1, 1])
    }

    pub fn diag(d: [i64; 4]) -> Self {
        LinMap4 {
            m: std::array::from_fn(|i| {
                std::array::from_fn(|j| if i == j { S::from_i64(d[i]) } else { S::zero() })
            }),
        }
    }

    /// Time reflection `diag(-1, 1, 1, 1)`.
    pub fn time_reflection() -> Self {
        Self::diag([-1, 1, 1, 1])
    }

    /// Reflection of the first spatial axis `diag(1, -1, 1, 1)`.
    pub fn space_reflection() -> Self {
        Self::diag([1, -1, 1, 1])
    }

    /// `-identity`.
    pub fn total_reflection() -> Self {
        Self::diag([-1, -1, -1, -1])
    }

    /// Boost in the `0-axis` plane given `cosh` and `sinh` of the rapidity.
    /// With rational arguments satisfying `ch^2 - sh^2 = 1` the result is an
    /// exact Lorentz transformation, e.g. `(5/4, 3/4)`.
    pub fn boost_hyperbolic(axis: usize, ch: S, sh: S) -> Self {
        assert!((1..4).contains(&axis), "boost axis must be spatial");
        let mut b = Self::identity();
        b.m[0][0] = ch.clone();
        b.m[axis][axis] = ch;
        b.m[0][axis] = sh.clone();
        b.m[axis][0] = sh;
        b
    }

    /// Rotation in the plane of spatial axes `a`, `b` from its cosine and sine.
    pub fn rotation_trig(a: usize, b: usize, c: S, s: S) -> Self {
        let mut r = Self::identity();
        r.m[a][a] = c.clone();
        r.m[b][b] = c;
        r.m[a][b] = -s.clone();
        r.m[b][a] = s;
        r
    }

    pub fn apply(&self, v: &Vec4<S>) -> Vec4<S> {
        Vec4(std::array::from_fn(|i| {
            (0..4).fold(S::zero(), |acc, j| acc + self.m[i][j].clone() * v.0[j].clone())
        }))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        LinMap4 {
            m: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    (0..4).fold(S::zero(), |acc, k| {
                        acc + self.m[i][k].clone() * other.m[k][j].clone()
                    })
                })
            }),
        }
    }

    pub fn transpose(&self) -> Self {
        LinMap4 {
            m: std::array::from_fn(|i| std::array::from_fn(|j| self.m[j][i].clone())),
        }
    }

    /// Determinant of the submatrix on the given (sorted) rows and columns,
    /// by cofactor expansion along the first row.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> S {
        debug_assert_eq!(rows.len(), cols.len());
        match rows.len() {
            0 => S::one(),
            1 => self.m[rows[0]][cols[0]].clone(),
            n => {
                let mut acc = S::zero();
                let sub_rows = &rows[1..];
                let mut sub_cols = Vec::with_capacity(n - 1);
                for (k, &c) in cols.iter().enumerate() {
                    let entry = self.m[rows[0]][c].clone();
                    if entry.is_zero() {
                        continue;
                    }
                    sub_cols.clear();
                    sub_cols.extend(cols.iter().copied().filter(|&x| x != c));
                    let term = entry * self.minor(sub_rows, &sub_cols);
                    acc = if k % 2 == 0 { acc + term } else { acc - term };
                }
                acc
            }
        }
    }

    pub fn det(&self) -> S {
        self.minor(&[0, 1, 2, 3], &[0, 1, 2, 3])
    }

    /// Inverse via the adjugate.
    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        if det.to_f64().abs() <= SINGULAR_TOL || det.is_zero() {
            return Err(Error::Singular);
        }
        let idx = [0usize, 1, 2, 3];
        let m = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                // adj[i][j] = cofactor[j][i]
                let rows: Vec<usize> = idx.iter().copied().filter(|&r| r != j).collect();
                let cols: Vec<usize> = idx.iter().copied().filter(|&c| c != i).collect();
                let c = self.minor(&rows, &cols);
                let c = if (i + j) % 2 == 0 { c } else { -c };
                c / det.clone()
            })
        });
        Ok(LinMap4 { m })
    }

    /// `G rho^T G`, the inverse of a Lorentz transformation.
    pub fn lorentz_inverse(&self) -> Self {
        LinMap4 {
            m: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    self.m[j][i].clone() * S::from_i64(METRIC_SIGNS[i] * METRIC_SIGNS[j])
                })
            }),
        }
    }

    /// Max-norm of `rho^T G rho - G`.
    pub fn lorentz_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = S::zero();
                for k in 0..4 {
                    acc = acc
                        + self.m[k][i].clone()
                            * self.m[k][j].clone()
                            * S::from_i64(METRIC_SIGNS[k]);
                }
                let target = if i == j { S::from_i64(METRIC_SIGNS[i]) } else { S::zero() };
                worst = worst.max((acc - target).to_f64().abs());
            }
        }
        worst
    }

    pub fn is_lorentz(&self, tol: f64) -> bool {
        self.lorentz_deviation() <= tol
    }

    /// True when `rho^T G rho = G` holds with no rounding at all (meaningful
    /// for rational matrices).
    pub fn is_exactly_lorentz(&self) -> bool {
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = S::zero();
                for k in 0..4 {
                    acc = acc
                        + self.m[k][i].clone()
                            * self.m[k][j].clone()
                            * S::from_i64(METRIC_SIGNS[k]);
                }
                let target = if i == j { S::from_i64(METRIC_SIGNS[i]) } else { S::zero() };
                if acc != target {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_f64(&self) -> LinMap4<f64> {
        LinMap4 {
            m: std::array::from_fn(|i| std::array::from_fn(|j| self.m[i][j].to_f64())),
        }
    }

    pub fn from_f64(map: &LinMap4<f64>) -> Self {
        LinMap4 {
            m: std::array::from_fn(|i| std::array::from_fn(|j| S::from_f64(map.m[i][j]))),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.m[i][j].clone() - other.m[i][j].clone()).to_f64().abs());
            }
        }
        worst
    }
}

impl LinMap4<f64> {
    /// Boost in the `0-axis` plane with the given rapidity.
    pub fn boost(axis: usize, rapidity: f64) -> Self {
        Self::boost_hyperbolic(axis, rapidity.cosh(), rapidity.sinh())
    }

    pub fn rotation(a: usize, b: usize, angle: f64) -> Self {
        Self::rotation_trig(a, b, angle.cos(), angle.sin())
    }
}

/// Component of the Lorentz group containing `rho`.
///
/// Time orientation is read off the sign of `(rho e_0)^0`.
pub fn classify_lorentz<S: Scalar>(rho: &LinMap4<S>) -> Result<OrientationClass> {
    let deviation = rho.lorentz_deviation();
    if deviation > LORENTZ_TOL {
        return Err(Error::NotLorentz { deviation });
    }
    let reverses_time = rho.m[0][0] < S::zero();
    let det_negative = rho.det() < S::zero();
    // det = -1 with preserved cone is S, det = +1 with reversed cone is TS
    let reverses_space = det_negative ^ reverses_time;
    Ok(OrientationClass::from_flips(reverses_time, reverses_space))
}

pub fn classify_gl<S: Scalar>(rho: &LinMap4<S>) -> Result<GLComponent> {
    let det = rho.det();
    if det.is_zero() || det.to_f64().abs() <= SINGULAR_TOL {
        return Err(Error::Singular);
    }
    Ok(if det > S::zero() { GLComponent::E } else { GLComponent::P })
}

/// Natural action of the group on frames, `(rho, xi) -> xi ∘ rho^-1`.
pub fn act_on_frame<S: Scalar>(rho: &LinMap4<S>, xi: &LinMap4<S>) -> Result<LinMap4<S>> {
    Ok(xi.compose(&rho.inverse()?))
}
