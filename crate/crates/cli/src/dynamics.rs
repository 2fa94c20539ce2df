//! Particle runs: plain simulation and antiparticle constructions.

use std::path::Path;

use mparity::dynamics::{
    dirac_time_reflect, feynman_conjugate, integrate_charged, max_el_residual, ChargeScheme, Trajectory, CSV_COLUMNS,
};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::scenario::{Combined, Loaded, LoadedTransform};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Feynman,
    Dirac,
}

impl Mode {
    fn scheme(self) -> ChargeScheme {
        match self {
            Mode::Feynman => ChargeScheme::Feynman,
            Mode::Dirac => ChargeScheme::Dirac,
        }
    }
}

#[derive(Serialize)]
pub struct FinalState {
    pub s: f64,
    pub x: [f64; 4],
    pub u: [f64; 4],
    pub pi: [f64; 4],
}

/// Shape of the spatial path: closure and roundness about its centroid,
/// and straightness.
#[derive(Serialize)]
pub struct Orbit {
    /// Spatial distance between first and last positions.
    pub closure: f64,
    pub mean_radius: f64,
    /// `(max - min) / mean` of the distance to the centroid.
    pub radius_spread: f64,
    /// Largest distance from the segment through the end points; zero for
    /// straight-line motion.
    pub chord_deviation: f64,
}

#[derive(Serialize)]
pub struct TrajectorySummary {
    pub csv: String,
    pub samples: usize,
    pub max_norm_drift: f64,
    pub max_el_residual: f64,
    pub future_directed: bool,
    pub final_state: FinalState,
    pub orbit: Orbit,
    pub passed: bool,
}

#[derive(Serialize)]
pub struct ParticleRun {
    pub particle: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trajectory: Option<TrajectorySummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Serialize)]
pub struct SimulateReport {
    pub particles: Vec<ParticleRun>,
}

#[derive(Serialize)]
pub struct ConjugateRun {
    pub particle: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub original: Option<TrajectorySummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transformed: Option<TrajectorySummary>,
    /// Feynman mode: largest difference between the trajectory and its
    /// double conjugate.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub involution_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub passed: bool,
}

#[derive(Serialize)]
pub struct ConjugateReport {
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transform: Option<String>,
    pub particles: Vec<ConjugateRun>,
}

fn orbit(t: &Trajectory) -> Orbit {
    let n = t.len();
    let spatial = |k: usize| [t.samples[k].point.x.0[1], t.samples[k].point.x.0[2], t.samples[k].point.x.0[3]];
    // trapezoid weights, so a path sampled over whole periods has its true centre
    let weight = |k: usize| if n > 1 && (k == 0 || k == n - 1) { 0.5 } else { 1.0 };
    let total: f64 = (0..n).map(weight).sum();
    let mut centroid = [0.0; 3];
    for k in 0..n {
        for (c, v) in centroid.iter_mut().zip(spatial(k)) {
            *c += weight(k) * v / total;
        }
    }
    let dist = |a: [f64; 3], b: [f64; 3]| a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
    let radii: Vec<f64> = (0..n).map(|k| dist(spatial(k), centroid)).collect();
    let mean = (0..n).map(|k| weight(k) * radii[k]).sum::<f64>() / total;
    let (lo, hi) = radii.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &r| (lo.min(r), hi.max(r)));
    let (a, b) = (spatial(0), spatial(n - 1));
    let chord = dist(a, b);
    let off_chord = |p: [f64; 3]| {
        if chord == 0.0 {
            return dist(p, a);
        }
        let d: Vec<f64> = (0..3).map(|i| (b[i] - a[i]) / chord).collect();
        let along: f64 = (0..3).map(|i| (p[i] - a[i]) * d[i]).sum();
        dist(p, std::array::from_fn(|i| a[i] + along * d[i]))
    };
    Orbit {
        closure: chord,
        mean_radius: mean,
        radius_spread: if mean > 0.0 { (hi - lo) / mean } else { 0.0 },
        chord_deviation: (0..n).map(|k| off_chord(spatial(k))).fold(0.0, f64::max),
    }
}

pub fn write_csv(t: &Trajectory, path: &Path) -> CliResult<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(CSV_COLUMNS)?;
    for row in t.rows() {
        w.write_record(row.iter().map(|v| v.to_string()))?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

fn summarize(t: &Trajectory, field: &Combined, loaded: &Loaded, dir: &Path, file: String) -> CliResult<TrajectorySummary> {
    write_csv(t, &dir.join(&file))?;
    let tol = &loaded.spec.tolerances;
    let residual = max_el_residual(t, Some(field.as_field()))?;
    let drift = t.max_norm_drift();
    let last = t.last();
    let future = t.is_future_directed();
    let pi = last.point.pi.components();
    let mut passed = residual <= tol.el_residual;
    // a Dirac trajectory must stay in the future cone
    if t.params.scheme == ChargeScheme::Dirac {
        passed &= future;
    }
    if t.parameterization == mparity::dynamics::Parameterization::Natural {
        passed &= drift <= tol.norm_drift;
    }
    Ok(TrajectorySummary {
        csv: file,
        samples: t.len(),
        max_norm_drift: drift,
        max_el_residual: residual,
        future_directed: future,
        final_state: FinalState { s: last.s, x: last.point.x.0, u: last.point.u.0, pi: [pi[0], pi[1], pi[2], pi[3]] },
        orbit: orbit(t),
        passed,
    })
}

fn integrate(loaded: &Loaded, field: &Combined, k: usize) -> CliResult<(String, Trajectory)> {
    let (name, params, start) = loaded.particle(k)?;
    let integ = &loaded.spec.integration;
    let t = integrate_charged(&start, &params, field.as_field(), integ.span, integ.steps)?;
    Ok((name, t))
}

fn create_dir(dir: &Path) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

/// Integrates every particle; failures are recorded per particle.
pub fn simulate(loaded: &Loaded, dir: &Path) -> CliResult<(SimulateReport, bool)> {
    create_dir(dir)?;
    let field = loaded.combined_field()?;
    let names = loaded.particle_names();
    let mut particles = Vec::new();
    let mut passed = true;
    for (k, name) in names.into_iter().enumerate() {
        let run = integrate(loaded, &field, k)
            .and_then(|(name, t)| summarize(&t, &field, loaded, dir, format!("{name}.csv")));
        particles.push(match run {
            Ok(s) => {
                passed &= s.passed;
                ParticleRun { particle: name, trajectory: Some(s), error: None }
            }
            Err(e) => ParticleRun { particle: name, trajectory: None, error: Some(e.to_string()) },
        });
    }
    Ok((SimulateReport { particles }, passed))
}

/// Checks the preconditions of `conjugate` that are input errors.
pub fn check_mode(loaded: &Loaded, mode: Mode, transform: Option<&LoadedTransform>) -> CliResult<()> {
    let wanted = mode.scheme();
    if loaded.scheme.field_parity() != wanted.field_parity() {
        return Err(CliError::Input(format!("{mode:?} mode needs scheme {}, the scenario uses scheme {}", if wanted == ChargeScheme::Feynman { 1 } else { 2 }, loaded.scheme.number())));
    }
    for (k, p) in loaded.spec.particles.iter().enumerate() {
        if p.scheme != wanted {
            return Err(CliError::Input(format!("particles[{k}]: {:?} particle in {mode:?} mode", p.scheme)));
        }
    }
    if let Some(t) = transform {
        if !t.map.class().reverses_time() {
            return Err(CliError::Input(format!("transform '{}' is in component {}, which does not reverse time", t.name, t.map.class())));
        }
    }
    Ok(())
}

pub fn conjugate(loaded: &Loaded, mode: Mode, transform: Option<&LoadedTransform>, dir: &Path) -> CliResult<(ConjugateReport, bool)> {
    check_mode(loaded, mode, transform)?;
    create_dir(dir)?;
    let field = loaded.combined_field()?;
    let moved_field = match transform {
        Some(t) => Some(field.pulled_back(t)?),
        None => None,
    };
    let mut runs = Vec::new();
    for (k, name) in loaded.particle_names().into_iter().enumerate() {
        let run = (|| -> CliResult<ConjugateRun> {
            let (name, t) = integrate(loaded, &field, k)?;
            let original = summarize(&t, &field, loaded, dir, format!("{name}_original.csv"))?;
            let (out, field_after, file, involution) = match (mode, transform) {
                (Mode::Feynman, _) => {
                    let conj = feynman_conjugate(&t)?;
                    let back = feynman_conjugate(&conj)?;
                    let err = t
                        .samples
                        .iter()
                        .zip(&back.samples)
                        .map(|(a, b)| (a.point.x.clone() - b.point.x.clone()).max_abs().max(a.point.pi.max_abs_diff(&b.point.pi)))
                        .fold(0.0f64, f64::max);
                    (conj, &field, format!("{name}_feynman.csv"), Some(err))
                }
                (Mode::Dirac, Some(tr)) => {
                    let r = dirac_time_reflect(&t, &tr.map)?;
                    (r, moved_field.as_ref().expect("set with transform"), format!("{name}_dirac_{}.csv", tr.name), None)
                }
                (Mode::Dirac, None) => unreachable!("dirac mode always has a transform"),
            };
            let transformed = summarize(&out, field_after, loaded, dir, file)?;
            let passed = original.passed && transformed.passed && involution.is_none_or(|e| e <= 1e-9);
            Ok(ConjugateRun {
                particle: name,
                original: Some(original),
                transformed: Some(transformed),
                involution_error: involution,
                error: None,
                passed,
            })
        })();
        runs.push(run.unwrap_or_else(|e| ConjugateRun {
            particle: name,
            original: None,
            transformed: None,
            involution_error: None,
            error: Some(e.to_string()),
            passed: false,
        }));
    }
    let passed = runs.iter().all(|r| r.passed);
    let report = ConjugateReport {
        mode: format!("{mode:?}").to_lowercase(),
        transform: transform.map(|t| t.name.clone()),
        particles: runs,
    };
    Ok((report, passed))
}
