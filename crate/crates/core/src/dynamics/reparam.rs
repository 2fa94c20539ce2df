use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::particle::{timelike_norm, Parameterization, PhasePoint, Sample, Trajectory};
use super::residual::{five_point, velocity_derivative};
use crate::error::{Error, Result};
use crate::exterior::QCovector;
use crate::spacetime::{metric_pair, Vec4};

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Reparameterization `γ` with its derivative, mapping new parameter values
/// to old ones: `ξ̃ = ξ ∘ γ`.
#[derive(Clone)]
pub struct Reparameterization {
    map: RealFn,
    derivative: RealFn,
}

impl Reparameterization {
    pub fn new<G, D>(map: G, derivative: D) -> Self
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Reparameterization { map: Arc::new(map), derivative: Arc::new(derivative) }
    }

    /// `s -> a s + b`.
    pub fn affine(a: f64, b: f64) -> Self {
        Self::new(move |s| a * s + b, move |_| a)
    }

    /// `s -> s_min + s_max - s`, the canonical direction-inverting map.
    pub fn reversal(s_min: f64, s_max: f64) -> Self {
        Self::new(move |s| s_min + s_max - s, |_| -1.0)
    }

    /// `s -> a s + b + c sin(ω s)`; monotone when `|c ω| < |a|`.
    pub fn sinusoidal(a: f64, b: f64, c: f64, omega: f64) -> Self {
        Self::new(move |s| a * s + b + c * (omega * s).sin(), move |s| a + c * omega * (omega * s).cos())
    }

    pub fn at(&self, s: f64) -> f64 {
        (self.map)(s)
    }

    pub fn derivative(&self, s: f64) -> f64 {
        (self.derivative)(s)
    }

    /// Solves `γ(s) = target` for monotone `γ`, starting the bracket search
    /// at `guess`.
    fn solve(&self, target: f64, guess: f64, increasing: bool) -> Result<f64> {
        let f = |s: f64| if increasing { self.at(s) - target } else { target - self.at(s) };
        let mut width = 1.0f64.max(guess.abs());
        let (mut lo, mut hi) = (guess - width, guess + width);
        let mut tries = 0;
        while !(f(lo) <= 0.0 && f(hi) >= 0.0) {
            width *= 2.0;
            lo = guess - width;
            hi = guess + width;
            tries += 1;
            if tries > 200 {
                return Err(Error::Invalid(format!("reparameterization never reaches {target}")));
            }
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if f(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // Newton polish; exact for affine maps
        let mut s = 0.5 * (lo + hi);
        for _ in 0..3 {
            let d = self.derivative(s);
            let next = s - (self.at(s) - target) / d;
            if !(d != 0.0 && next.is_finite() && (next - s).abs() <= (hi - lo).max(f64::EPSILON * s.abs())) {
                break;
            }
            s = next;
        }
        Ok(s)
    }
}

impl fmt::Debug for Reparameterization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Reparameterization")
    }
}

/// Lagrange interpolation on the uniform sample grid using the six nearest
/// nodes (fewer when the trajectory is shorter). Exact at the nodes.
pub(crate) struct Interpolator<'a> {
    traj: &'a Trajectory,
    s0: f64,
    h: f64,
}

impl<'a> Interpolator<'a> {
    pub(crate) fn new(traj: &'a Trajectory) -> Result<Self> {
        let h = traj.check_grid(2)?;
        Ok(Interpolator { traj, s0: traj.first().s, h })
    }

    fn weights(&self, s: f64) -> (usize, Vec<f64>) {
        let n = self.traj.len();
        let t = (s - self.s0) / self.h;
        let nearest = t.round();
        if (t - nearest).abs() < 1e-9 && nearest >= 0.0 && (nearest as usize) < n {
            return (nearest as usize, vec![1.0]);
        }
        let width = n.min(6);
        let base = (t.floor() as isize - (width as isize / 2 - 1)).clamp(0, (n - width) as isize) as usize;
        let w = (0..width)
            .map(|j| {
                let tj = (base + j) as f64;
                (0..width)
                    .filter(|&k| k != j)
                    .map(|k| {
                        let tk = (base + k) as f64;
                        (t - tk) / (tj - tk)
                    })
                    .product()
            })
            .collect();
        (base, w)
    }

    pub(crate) fn point(&self, s: f64) -> (Vec4, Vec4, QCovector) {
        let (base, w) = self.weights(s);
        let mut x = Vec4::zero();
        let mut u = Vec4::zero();
        let first = &self.traj.samples[base].point.pi;
        let mut pi = QCovector::zero(1, first.parity());
        for (j, wj) in w.iter().enumerate() {
            let p = &self.traj.samples[base + j].point;
            x = x + p.x.clone() * *wj;
            u = u + p.u.clone() * *wj;
            pi = pi + p.pi.scale(wj);
        }
        (x, u, pi)
    }
}

/// Resamples `ξ ∘ γ` on a uniform grid with as many samples as the input,
/// covering the parameters mapped onto the input span.
///
/// `ξ̃' = γ' (ξ' ∘ γ)`. For `γ' > 0` the momentum is `π ∘ γ`; for `γ' < 0`
/// the direction flag is toggled and the momentum is `-(π ∘ γ)`, which is the
/// one satisfying the velocity-momentum relation again.
pub fn reparameterize(traj: &Trajectory, gamma: &Reparameterization) -> Result<Trajectory> {
    resample(traj, gamma, true)
}

/// With `direction_rule` off the momentum is composed without sign change
/// and the direction flag is kept; the caller accounts for both.
pub(crate) fn resample(traj: &Trajectory, gamma: &Reparameterization, direction_rule: bool) -> Result<Trajectory> {
    let interp = Interpolator::new(traj)?;
    let (s_min, s_max) = traj.span();
    let n = traj.len();
    let probe = gamma.derivative(s_min);
    if probe == 0.0 || !probe.is_finite() {
        return Err(Error::NotMonotone { at: s_min });
    }
    let increasing = probe > 0.0;
    let a = gamma.solve(s_min, s_min, increasing)?;
    let b = gamma.solve(s_max, s_max, increasing)?;
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let step = (hi - lo) / (n - 1) as f64;

    let mut samples = Vec::with_capacity(n);
    let mut last_old: Option<f64> = None;
    let mut natural = traj.parameterization == Parameterization::Natural;
    for j in 0..n {
        let s = lo + j as f64 * step;
        let d = gamma.derivative(s);
        if d == 0.0 || (d > 0.0) != increasing || !d.is_finite() {
            return Err(Error::NotMonotone { at: s });
        }
        let old = gamma.at(s).clamp(s_min, s_max);
        if let Some(prev) = last_old {
            if (old > prev) != increasing && old != prev {
                return Err(Error::NotMonotone { at: s });
            }
        }
        last_old = Some(old);
        natural &= (d.abs() - 1.0).abs() < 1e-12;
        let (x, u, pi) = interp.point(old);
        let pi = if !increasing && direction_rule { -pi } else { pi };
        samples.push(Sample { s, point: PhasePoint { x, u: u * d, pi } });
    }
    let direction = if increasing || !direction_rule { traj.direction } else { traj.direction.toggled() };
    Ok(Trajectory {
        samples,
        direction,
        params: traj.params,
        parameterization: if natural { Parameterization::Natural } else { Parameterization::General },
    })
}

/// Reparameterizes by proper time accumulated from the first sample
/// (trapezoidal rule on `sqrt⟨g(ξ'), ξ'⟩`), so that `⟨g(ξ'), ξ'⟩ = 1`.
pub fn natural_reparameterize(traj: &Trajectory) -> Result<Trajectory> {
    let h = traj.check_grid(2)?;
    let speeds: Vec<f64> =
        traj.samples.iter().map(|s| timelike_norm(&s.point.u).map(f64::sqrt)).collect::<Result<_>>()?;
    let mut tau = vec![0.0; traj.len()];
    for k in 1..traj.len() {
        tau[k] = tau[k - 1] + 0.5 * h * (speeds[k - 1] + speeds[k]);
    }
    let interp = Interpolator::new(traj)?;
    let n = traj.len();
    let total = tau[n - 1];
    let s0 = traj.first().s;
    let mut samples = Vec::with_capacity(n);
    let mut seg = 0;
    for j in 0..n {
        let t = total * j as f64 / (n - 1) as f64;
        while seg + 2 < n && tau[seg + 1] < t {
            seg += 1;
        }
        // within a segment the speed is taken linear in s, matching the
        // trapezoidal nodes
        let (f0, f1) = (speeds[seg], speeds[seg + 1]);
        let rise = (f1 - f0) / (2.0 * h);
        let dt = (t - tau[seg]).max(0.0);
        let ds = 2.0 * dt / (f0 + (f0 * f0 + 4.0 * rise * dt).max(0.0).sqrt());
        let s = (s0 + seg as f64 * h + ds).min(traj.last().s);
        let (x, u, pi) = interp.point(s);
        let u = u.clone() * (1.0 / timelike_norm(&u)?.sqrt());
        samples.push(Sample { s: t, point: PhasePoint { x, u, pi } });
    }
    Ok(Trajectory { samples, direction: traj.direction, params: traj.params, parameterization: Parameterization::Natural })
}

/// Largest deviations in the reparameterization identities between a
/// trajectory and its reparameterization, over the basis variations.
#[derive(Clone, Copy, PartialEq, Debug, Default, Serialize)]
pub struct ReparamIdentities {
    /// `π̃(s) = π(γ(s))` with `π̃ = ±` stored momentum.
    pub momentum_composition: f64,
    /// `π̃'(s) = γ'(s) π'(γ(s))`.
    pub momentum_rate: f64,
    /// `m g(ξ̃')/√Ñ = sign(γ') m g(ξ' ∘ γ)/√N`.
    pub legendre_scaling: f64,
    /// Stored momentum against the velocity-momentum relation.
    pub legendre_relation: f64,
}

/// Evaluates the identities at the interior samples of `rep`, which must be
/// `reparameterize(orig, gamma)`.
pub fn reparam_identities(orig: &Trajectory, rep: &Trajectory, gamma: &Reparameterization) -> Result<ReparamIdentities> {
    let interp = Interpolator::new(orig)?;
    let h_orig = orig.check_grid(5)?;
    let h_rep = rep.check_grid(5)?;
    let m = orig.params.mass;
    let parity = orig.params.scheme.parity();
    let (s_min, s_max) = orig.span();

    // π' along the original grid, then interpolated like the state
    let rate_orig: Vec<QCovector> = (0..orig.len()).map(|i| momentum_rate(orig, i, h_orig)).collect();
    let rate_at = |s: f64| -> QCovector {
        let (base, w) = interp.weights(s);
        w.iter().enumerate().fold(QCovector::zero(1, parity), |acc, (j, wj)| acc + rate_orig[base + j].scale(wj))
    };

    let mut out = ReparamIdentities::default();
    for i in 2..rep.len() - 2 {
        let smp = &rep.samples[i];
        let d = gamma.derivative(smp.s);
        let sign = d.signum();
        let old = gamma.at(smp.s).clamp(s_min, s_max);
        let (_, u_old, pi_old) = interp.point(old);
        let raw = smp.point.pi.scale(&sign);
        out.momentum_composition = out.momentum_composition.max(raw.max_abs_diff(&pi_old));

        let lhs = momentum_rate(rep, i, h_rep).scale(&sign);
        let rhs = rate_at(old).scale(&d);
        out.momentum_rate = out.momentum_rate.max(lhs.max_abs_diff(&rhs));

        let n_new = timelike_norm(&smp.point.u)?;
        let n_old = timelike_norm(&u_old)?;
        for k in 0..4 {
            let delta = Vec4::basis(k);
            let l = m / n_new.sqrt() * metric_pair(&smp.point.u, &delta);
            let r = sign * m / n_old.sqrt() * metric_pair(&u_old, &delta);
            out.legendre_scaling = out.legendre_scaling.max((l - r).abs());
            let stored = smp.point.pi.components()[k];
            out.legendre_relation = out.legendre_relation.max((stored - l).abs());
        }
    }
    Ok(out)
}

fn momentum_rate(traj: &Trajectory, i: usize, h: f64) -> QCovector {
    let pi = |k: usize| traj.samples[k].point.pi.clone();
    let n = traj.len();
    if let Some((base, w)) = five_point(n, i) {
        let zero = QCovector::zero(1, pi(0).parity());
        let sum = (0..5).fold(zero, |acc, k| acc + pi(base + k).scale(&w[k]));
        return sum.scale(&(1.0 / (12.0 * h)));
    }
    if i >= 1 && i + 1 < n {
        (pi(i + 1) - pi(i - 1)).scale(&(1.0 / (2.0 * h)))
    } else if i == 0 {
        (pi(0).scale(&-3.0) + pi(1).scale(&4.0) - pi(2)).scale(&(1.0 / (2.0 * h)))
    } else {
        (pi(n - 1).scale(&3.0) - pi(n - 2).scale(&4.0) + pi(n - 3)).scale(&(1.0 / (2.0 * h)))
    }
}

/// `max |⟨g(ξ'), ξ''⟩|` over the samples, which vanishes for natural
/// parameterizations.
pub fn max_velocity_acceleration_pairing(traj: &Trajectory) -> Result<f64> {
    let h = traj.check_grid(3)?;
    Ok((0..traj.len())
        .map(|i| metric_pair(&traj.samples[i].point.u, &velocity_derivative(traj, i, h)).abs())
        .fold(0.0, f64::max))
}
