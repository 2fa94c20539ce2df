use std::fmt;
use std::sync::Arc;

use super::particle::{timelike_norm, Trajectory};
use crate::error::Result;
use crate::fields::FormField;
use crate::spacetime::{metric_pair, OrientationClass, Vec4};

/// Variation `δξ` used to test the equation of motion.
#[derive(Clone)]
pub enum Variation {
    /// Reference basis vector `e_k`.
    Basis(usize),
    /// `δξ = ξ'`, for which the equation holds identically.
    Velocity,
    Custom(Arc<dyn Fn(f64) -> Vec4 + Send + Sync>),
}

impl Variation {
    /// The four basis variations followed by the velocity.
    pub fn standard() -> Vec<Variation> {
        (0..4).map(Variation::Basis).chain([Variation::Velocity]).collect()
    }

    fn at(&self, s: f64, u: &Vec4) -> Vec4 {
        match self {
            Variation::Basis(k) => Vec4::basis(*k),
            Variation::Velocity => u.clone(),
            Variation::Custom(f) => f(s),
        }
    }
}

impl fmt::Debug for Variation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variation::Basis(k) => write!(f, "Basis({k})"),
            Variation::Velocity => f.write_str("Velocity"),
            Variation::Custom(_) => f.write_str("Custom"),
        }
    }
}

/// Weights of a five-point first-derivative stencil at sample `i` of `n`
/// (scaled by `12 h`), with the index of the first sample used. Centered in
/// the interior, one-sided fourth order at the two samples nearest each end.
pub(crate) fn five_point(n: usize, i: usize) -> Option<(usize, [f64; 5])> {
    if n < 5 {
        return None;
    }
    Some(match i {
        0 => (0, [-25.0, 48.0, -36.0, 16.0, -3.0]),
        1 => (0, [-3.0, -10.0, 18.0, -6.0, 1.0]),
        _ if i + 2 < n => (i - 2, [1.0, -8.0, 0.0, 8.0, -1.0]),
        _ if i + 2 == n => (n - 5, [-1.0, 6.0, -18.0, 10.0, 3.0]),
        _ => (n - 5, [3.0, -16.0, 36.0, -48.0, 25.0]),
    })
}

/// Derivative of the stored velocity at sample `i`: fourth-order stencils
/// when five samples are available, second-order ones otherwise.
pub(crate) fn velocity_derivative(traj: &Trajectory, i: usize, h: f64) -> Vec4 {
    let u = |k: usize| traj.samples[k].point.u.clone();
    let n = traj.len();
    if let Some((base, w)) = five_point(n, i) {
        let sum = (0..5).fold(Vec4::zero(), |acc, k| acc + u(base + k) * w[k]);
        return sum * (1.0 / (12.0 * h));
    }
    if i >= 1 && i + 1 < n {
        (u(i + 1) - u(i - 1)) * (1.0 / (2.0 * h))
    } else if i == 0 {
        (u(0) * -3.0 + u(1) * 4.0 - u(2)) * (1.0 / (2.0 * h))
    } else {
        (u(n - 1) * 3.0 - u(n - 2) * 4.0 + u(n - 3)) * (1.0 / (2.0 * h))
    }
}

/// Residual of the equation of motion at the interior samples:
///
/// `m/√N (⟨g(ξ''), δ⟩ - ⟨g(ξ'), ξ''⟩/N ⟨g(ξ'), δ⟩) - σ e(o) F(ξ, ξ', δ, o)`
///
/// with `N = ⟨g(ξ'), ξ'⟩`, `ξ'` the stored velocity, `ξ''` its centered
/// difference and `σ` the direction sign. Pass `None` for a free particle.
/// Samples within two steps of either end are skipped when the fourth-order
/// stencil is available, one step otherwise.
pub fn el_residual(traj: &Trajectory, field: Option<&dyn FormField>, delta: &Variation) -> Result<Vec<f64>> {
    let h = traj.check_grid(3)?;
    let n = traj.len();
    let margin = if n >= 5 { 2 } else { 1 };
    let m = traj.params.mass;
    let e = traj.params.charge.at(OrientationClass::E) * traj.direction.sign();
    let mut out = Vec::with_capacity(n - 2 * margin);
    for i in margin..n - margin {
        let smp = &traj.samples[i];
        let (x, u) = (&smp.point.x, &smp.point.u);
        let a = velocity_derivative(traj, i, h);
        let d = delta.at(smp.s, u);
        let norm = timelike_norm(u)?;
        let lhs = m / norm.sqrt() * (metric_pair(&a, &d) - metric_pair(u, &a) / norm * metric_pair(u, &d));
        let rhs = match field {
            Some(f) if e != 0.0 => e * f.covector_at(x)?.evaluate(&[u.clone(), d], OrientationClass::E)?,
            _ => 0.0,
        };
        out.push(lhs - rhs);
    }
    Ok(out)
}

/// Largest absolute residual over the standard variations.
pub fn max_el_residual(traj: &Trajectory, field: Option<&dyn FormField>) -> Result<f64> {
    let mut worst = 0.0f64;
    for v in Variation::standard() {
        for r in el_residual(traj, field, &v)? {
            worst = worst.max(r.abs());
        }
    }
    Ok(worst)
}
