use super::particle::{ChargeScheme, PhasePoint, Sample, Trajectory};
use super::reparam::{resample, Reparameterization};
use crate::error::{Error, Result};
use crate::transform::{pullback_covector, PoincareMap};

/// Same world line traversed in the opposite direction: the canonical
/// reversal `γ(s) = s_min + s_max - s` with momentum sign inversion. The
/// charge value is unchanged.
pub fn feynman_conjugate(traj: &Trajectory) -> Result<Trajectory> {
    if traj.params.scheme != ChargeScheme::Feynman {
        return Err(Error::Scheme("Feynman conjugation needs a Feynman-scheme trajectory".into()));
    }
    let (a, b) = traj.span();
    resample(traj, &Reparameterization::reversal(a, b), true)
}

/// Image of a future-directed Dirac trajectory under a time-reflecting
/// Poincaré map `φ`, followed by the canonical reversal so that the result
/// is future-directed again.
///
/// Events go through `φ`, velocities through `ρ = φ̄` and the momentum is
/// pulled back with its `(o, e)` index; the reversal then leaves the
/// momentum consistent with the velocity, so the direction stays forward.
/// The result solves the equation of motion in the field `(φ⁻¹)^* F`.
pub fn dirac_time_reflect(traj: &Trajectory, phi: &PoincareMap) -> Result<Trajectory> {
    if traj.params.scheme != ChargeScheme::Dirac {
        return Err(Error::Scheme("Dirac reflection needs a Dirac-scheme trajectory".into()));
    }
    if !phi.class().reverses_time() {
        return Err(Error::NotTimeReflecting);
    }
    if let Some(bad) = traj.samples.iter().find(|s| !traj_future(&s.point)) {
        return Err(Error::NotFutureDirected { vector: bad.point.u.0 });
    }
    let rho = phi.linear();
    let moved = traj
        .samples
        .iter()
        .map(|smp| {
            let p = &smp.point;
            Ok(Sample {
                s: smp.s,
                point: PhasePoint { x: phi.apply(&p.x), u: rho.apply(&p.u), pi: pullback_covector(rho, &p.pi)? },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let moved = Trajectory { samples: moved, ..traj.clone() };
    let (a, b) = moved.span();
    let out = resample(&moved, &Reparameterization::reversal(a, b), false)?;
    debug_assert!(out.is_future_directed());
    Ok(out)
}

fn traj_future(p: &PhasePoint) -> bool {
    crate::spacetime::cone_region_default(&p.u) == crate::spacetime::ConeRegion::TI1
}
