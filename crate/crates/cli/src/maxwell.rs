//! Field equations and their covariance for every field of a scenario.

use mparity::fields::{coulomb_system, constitutive_residual, maxwell_residuals, potential_residual};
use mparity::transform::{check_covariance, check_covariance_sampled, CovarianceReport, LAW_NAMES};
use mparity::{EMSystem, FormField, PolyForm, SampledForm, Vec4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::CliResult;
use crate::scenario::{poly_system, Field, Loaded};

#[derive(Serialize)]
pub struct LawCheck {
    pub law: &'static str,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Residual with step `h` over residual with step `h/2`, for sampled
    /// fields; about 4 for second-order differences.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refinement_ratio: Option<f64>,
}

#[derive(Serialize)]
pub struct TransformCheck {
    pub transform: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<CovarianceReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub passed: bool,
}

#[derive(Serialize)]
pub struct FieldCheck {
    pub field: String,
    pub exact: bool,
    pub laws: Vec<LawCheck>,
    pub covariance: Vec<TransformCheck>,
    pub passed: bool,
}

#[derive(Serialize)]
pub struct MaxwellReport {
    pub scheme: u8,
    pub c: f64,
    pub fields: Vec<FieldCheck>,
}

fn transform_check(name: &str, r: mparity::Result<CovarianceReport>) -> TransformCheck {
    match r {
        Ok(rep) => TransformCheck { transform: name.into(), passed: rep.passed, report: Some(rep), error: None },
        Err(e) => TransformCheck { transform: name.into(), report: None, error: Some(e.to_string()), passed: false },
    }
}

fn check_poly(loaded: &Loaded, label: &str, field: &PolyForm, current: Option<&PolyForm>) -> CliResult<FieldCheck> {
    let sys = poly_system(field, current, loaded.scheme, loaded.spec.c)?;
    let (hom, inhom) = maxwell_residuals(&sys)?;
    let residuals = [
        hom.max_abs_coefficient(),
        inhom.max_abs_coefficient(),
        constitutive_residual(&sys)?.max_abs_coefficient(),
        potential_residual(&sys)?.max_abs_coefficient(),
    ];
    let laws: Vec<LawCheck> = LAW_NAMES
        .iter()
        .zip(residuals)
        .map(|(&law, r)| LawCheck { law, residual: r, tolerance: 0.0, passed: r == 0.0, refinement_ratio: None })
        .collect();
    let sampled = || sampled_from_poly(&sys);
    let points = sample_points(loaded, None);
    let covariance = loaded
        .transforms
        .iter()
        .map(|t| match &t.exact {
            Some(exact) => transform_check(&t.name, check_covariance(&sys, exact)),
            None => transform_check(&t.name, check_covariance_sampled(&sampled(), &t.map, &points, loaded.spec.tolerances.h)),
        })
        .collect::<Vec<_>>();
    let passed = laws.iter().all(|l| l.passed) && covariance.iter().all(|c| c.passed);
    Ok(FieldCheck { field: label.into(), exact: true, laws, covariance, passed })
}

fn sampled_from_poly(sys: &EMSystem<PolyForm>) -> EMSystem<SampledForm> {
    EMSystem {
        potential: SampledForm::from_poly(&sys.potential),
        field: SampledForm::from_poly(&sys.field),
        induction: SampledForm::from_poly(&sys.induction),
        current: SampledForm::from_poly(&sys.current),
        scheme: sys.scheme,
        c: sys.c,
    }
}

/// Deterministic sample points from the scenario seed, kept at least twice
/// the exclusion radius away from the spatial origin.
fn sample_points(loaded: &Loaded, exclusion: Option<f64>) -> Vec<Vec4> {
    let mut rng = ChaCha8Rng::seed_from_u64(loaded.spec.seed);
    let min_r = 2.0 * exclusion.unwrap_or(0.0);
    let mut out = Vec::with_capacity(loaded.spec.tolerances.sample_points);
    while out.len() < loaded.spec.tolerances.sample_points {
        let x = Vec4(std::array::from_fn(|_| rng.gen_range(-2.0..2.0)));
        let r = (1..4).map(|k| x.0[k] * x.0[k]).sum::<f64>().sqrt();
        if r >= min_r.max(0.5) || exclusion.is_none() {
            out.push(x);
        }
    }
    out
}

fn max_at(form: &SampledForm, points: &[Vec4]) -> CliResult<f64> {
    let mut worst = 0.0f64;
    for x in points {
        worst = worst.max(form.covector_at(x)?.max_abs());
    }
    Ok(worst)
}

fn check_coulomb(loaded: &Loaded, charge: f64, radius: f64) -> CliResult<FieldCheck> {
    let tol = &loaded.spec.tolerances;
    let sys = coulomb_system(charge, radius, loaded.scheme, loaded.spec.c)?;
    let points = sample_points(loaded, Some(radius));
    let (richardson, scale) = mparity::transform::sampled_residuals(&sys, &points, tol.h)?;
    let coarse = sys.numeric_residuals(tol.h)?;
    let fine = sys.numeric_residuals(tol.h / 2.0)?;
    let limit = tol.sampled_relative * scale.max(1.0);
    let mut laws = Vec::new();
    for k in 0..4 {
        let (rc, rf) = (max_at(&coarse[k], &points)?, max_at(&fine[k], &points)?);
        // below this both residuals are rounding noise and the ratio is meaningless
        let ratio = (rf > 1e-13 * scale.max(1.0)).then(|| rc / rf);
        laws.push(LawCheck {
            law: LAW_NAMES[k],
            residual: richardson[k],
            tolerance: limit,
            passed: richardson[k] <= limit,
            refinement_ratio: ratio,
        });
    }
    let covariance = loaded
        .transforms
        .iter()
        .map(|t| transform_check(&t.name, check_covariance_sampled(&sys, &t.map, &points, tol.h)))
        .collect::<Vec<_>>();
    let passed = laws.iter().all(|l| l.passed) && covariance.iter().all(|c| c.passed);
    Ok(FieldCheck { field: "coulomb".into(), exact: false, laws, covariance, passed })
}

pub fn run(loaded: &Loaded) -> CliResult<MaxwellReport> {
    let fields = loaded
        .fields
        .iter()
        .map(|f| match &f.field {
            Field::Poly { field, current } => check_poly(loaded, &f.label, field, current.as_ref()),
            Field::Coulomb { charge, exclusion_radius } => check_coulomb(loaded, *charge, *exclusion_radius),
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(MaxwellReport { scheme: loaded.scheme.number(), c: loaded.spec.c, fields })
}
