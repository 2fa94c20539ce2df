//! Scenario files: fields, particles and transforms for one run.

use std::path::{Path, PathBuf};

use mparity::dynamics::{ChargeScheme, ParticleParams, PhasePoint};
use mparity::fields::{coulomb_system, plane_wave, uniform_electric, uniform_magnetic, FieldFile};
use mparity::transform::{representative, Entry, PoincareSpec, SAMPLED_REL_TOL};
use mparity::{EMSystem, FormField, OrientationClass, PoincareMap, PolyForm, Rational, SampledForm, Scheme, Vec4};
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default = "default_scheme")]
    pub scheme: u8,
    #[serde(default = "default_c")]
    pub c: f64,
    /// Seeds the sample points of sampled fields.
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub fields: Vec<FieldRef>,
    #[serde(default)]
    pub particles: Vec<ParticleSpec>,
    #[serde(default)]
    pub transforms: Vec<TransformSpec>,
    #[serde(default)]
    pub integration: Integration,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub outputs: Outputs,
}

fn default_scheme() -> u8 {
    1
}

fn default_c() -> f64 {
    1.0
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum FieldRef {
    /// `B dx^i ∧ dx^j` with `(i, j, axis)` cyclic.
    #[serde(rename = "uniform_B")]
    UniformB {
        strength: Entry,
        #[serde(default = "default_b_axis")]
        axis: usize,
    },
    /// `E dx^0 ∧ dx^axis`.
    #[serde(rename = "uniform_E")]
    UniformE {
        strength: Entry,
        #[serde(default = "default_e_axis")]
        axis: usize,
    },
    #[serde(rename = "plane_wave")]
    PlaneWave {
        amplitude: Entry,
        #[serde(default = "zero_entry")]
        slope: Entry,
    },
    #[serde(rename = "coulomb")]
    Coulomb {
        charge: f64,
        #[serde(default = "default_exclusion")]
        exclusion_radius: f64,
    },
    /// Field file, optionally with a current 3-form file.
    #[serde(rename = "file")]
    File { path: String, current: Option<String> },
}

fn default_b_axis() -> usize {
    3
}

fn default_e_axis() -> usize {
    1
}

fn zero_entry() -> Entry {
    Entry::Number(0.0)
}

fn default_exclusion() -> f64 {
    0.1
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParticleSpec {
    pub name: Option<String>,
    pub mass: f64,
    pub charge: f64,
    pub scheme: ChargeScheme,
    pub start: StartState,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StartState {
    pub x: [f64; 4],
    pub u: [f64; 4],
    /// Rescale `u` to unit norm instead of requiring it.
    #[serde(default = "yes")]
    pub normalize: bool,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformSpec {
    pub name: String,
    /// Representative of a Lorentz component: `E`, `T`, `S` or `TS`.
    pub class: Option<String>,
    pub matrix: Option<[[Entry; 4]; 4]>,
    pub translation: Option<[Entry; 4]>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Integration {
    #[serde(default = "default_steps")]
    pub steps: usize,
    #[serde(default = "default_span")]
    pub span: [f64; 2],
}

fn default_steps() -> usize {
    1000
}

fn default_span() -> [f64; 2] {
    [0.0, 1.0]
}

impl Default for Integration {
    fn default() -> Self {
        Integration { steps: default_steps(), span: default_span() }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Bound on `max |el_residual|` for a trajectory to pass.
    pub el_residual: f64,
    pub norm_drift: f64,
    /// Central-difference step for sampled fields.
    pub h: f64,
    pub sampled_relative: f64,
    pub sample_points: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { el_residual: 1e-6, norm_drift: 1e-8, h: 1e-3, sampled_relative: SAMPLED_REL_TOL, sample_points: 8 }
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    /// Directory for CSV files and reports, relative to the scenario file.
    pub dir: Option<String>,
}

/// A field ready for use.
#[derive(Clone, Debug)]
pub enum Field {
    Poly { field: PolyForm, current: Option<PolyForm> },
    Coulomb { charge: f64, exclusion_radius: f64 },
}

#[derive(Clone, Debug)]
pub struct LoadedField {
    pub label: String,
    pub field: Field,
}

#[derive(Clone, Debug)]
pub struct LoadedTransform {
    pub name: String,
    pub map: PoincareMap<f64>,
    /// Present when every entry is exact and the linear part is exactly Lorentz.
    pub exact: Option<PoincareMap<Rational>>,
}

#[derive(Clone, Debug)]
pub struct Loaded {
    pub spec: Scenario,
    pub path: PathBuf,
    pub hash: String,
    pub scheme: Scheme,
    pub fields: Vec<LoadedField>,
    pub transforms: Vec<LoadedTransform>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

/// Parses and validates a scenario file, loading every referenced field.
pub fn load(path: &Path) -> CliResult<Loaded> {
    let text = read(path)?;
    let mut de = serde_json::Deserializer::from_str(&text);
    let spec: Scenario = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let key = e.path().to_string();
        let inner = e.into_inner();
        CliError::Malformed {
            path: path.to_path_buf(),
            line: inner.line(),
            column: inner.column(),
            key,
            message: inner.to_string(),
        }
    })?;
    let base = path.parent().unwrap_or(Path::new("."));
    let scheme = Scheme::from_number(spec.scheme).map_err(|e| CliError::Input(format!("scheme: {e}")))?;
    validate(&spec, scheme)?;
    let fields = spec
        .fields
        .iter()
        .enumerate()
        .map(|(k, f)| load_field(f, scheme, base).map_err(|e| CliError::Input(format!("fields[{k}]: {e}"))))
        .collect::<CliResult<Vec<_>>>()?;
    let transforms = spec
        .transforms
        .iter()
        .enumerate()
        .map(|(k, t)| load_transform(t).map_err(|e| CliError::Input(format!("transforms[{k}]: {e}"))))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Loaded { hash: sha256_hex(text.as_bytes()), path: path.to_path_buf(), spec, scheme, fields, transforms })
}

fn validate(spec: &Scenario, scheme: Scheme) -> CliResult<()> {
    let bad = |m: String| Err(CliError::Input(m));
    if !(spec.c > 0.0 && spec.c.is_finite()) {
        return bad(format!("c: must be positive, got {}", spec.c));
    }
    let span = spec.integration.span;
    if spec.integration.steps == 0 || !(span[1] > span[0]) {
        return bad(format!("integration: need steps > 0 and an increasing span, got {} over {span:?}", spec.integration.steps));
    }
    let t = &spec.tolerances;
    if !(t.el_residual > 0.0 && t.norm_drift > 0.0 && t.h > 0.0 && t.sampled_relative > 0.0) || t.sample_points == 0 {
        return bad("tolerances: all tolerances and the number of sample points must be positive".into());
    }
    for (k, p) in spec.particles.iter().enumerate() {
        if p.scheme.field_parity() != scheme.field_parity() {
            return bad(format!(
                "particles[{k}].scheme: {:?} particles need field parity {}, scheme {} gives {}",
                p.scheme,
                p.scheme.field_parity(),
                spec.scheme,
                scheme.field_parity()
            ));
        }
    }
    let mut names: Vec<&str> = spec.transforms.iter().map(|t| t.name.as_str()).collect();
    names.sort_unstable();
    if names.windows(2).any(|w| w[0] == w[1]) {
        return bad("transforms: names must be unique".into());
    }
    Ok(())
}

fn entry(e: &Entry) -> CliResult<Rational> {
    Ok(e.to_rational()?)
}

fn load_field(f: &FieldRef, scheme: Scheme, base: &Path) -> CliResult<LoadedField> {
    let parity = scheme.field_parity();
    let poly = |label: String, field: PolyForm| LoadedField { label, field: Field::Poly { field, current: None } };
    Ok(match f {
        FieldRef::UniformB { strength, axis } => poly(format!("uniform_B(axis {axis})"), uniform_magnetic(entry(strength)?, *axis, parity)?),
        FieldRef::UniformE { strength, axis } => poly(format!("uniform_E(axis {axis})"), uniform_electric(entry(strength)?, *axis, parity)?),
        FieldRef::PlaneWave { amplitude, slope } => poly("plane_wave".into(), plane_wave(entry(amplitude)?, entry(slope)?, parity)),
        FieldRef::Coulomb { charge, exclusion_radius } => {
            if !(*exclusion_radius > 0.0) {
                return Err(CliError::Input(format!("exclusion_radius must be positive, got {exclusion_radius}")));
            }
            LoadedField {
                label: "coulomb".into(),
                field: Field::Coulomb { charge: *charge, exclusion_radius: *exclusion_radius },
            }
        }
        FieldRef::File { path, current } => {
            let field = read_form(&base.join(path))?;
            if field.degree() != 2 || field.parity() != parity {
                return Err(CliError::Input(format!(
                    "{path}: field must be a 2-form of parity {parity} for scheme {}, got degree {} parity {}",
                    scheme.number(),
                    field.degree(),
                    field.parity()
                )));
            }
            let current = match current {
                Some(p) => {
                    let j = read_form(&base.join(p))?;
                    if j.degree() != 3 || j.parity() != scheme.source_parity() {
                        return Err(CliError::Input(format!(
                            "{p}: current must be a 3-form of parity {}, got degree {} parity {}",
                            scheme.source_parity(),
                            j.degree(),
                            j.parity()
                        )));
                    }
                    Some(j)
                }
                None => None,
            };
            LoadedField { label: path.clone(), field: Field::Poly { field, current } }
        }
    })
}

fn read_form(path: &Path) -> CliResult<PolyForm> {
    let text = read(path)?;
    let file = FieldFile::parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    file.to_form().map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn class_by_name(name: &str) -> Option<OrientationClass> {
    OrientationClass::ALL.into_iter().find(|c| c.name() == name)
}

fn load_transform(t: &TransformSpec) -> CliResult<LoadedTransform> {
    let zero = || std::array::from_fn(|_| Entry::Number(0.0));
    let spec = match (&t.class, &t.matrix) {
        (Some(c), None) => {
            let class = class_by_name(c).ok_or_else(|| CliError::Input(format!("unknown class '{c}', expected E, T, S or TS")))?;
            let rep = representative::<f64>(class);
            PoincareSpec {
                matrix: std::array::from_fn(|i| std::array::from_fn(|j| Entry::Number(rep.m[i][j]))),
                translation: t.translation.clone().unwrap_or_else(zero),
            }
        }
        (None, Some(m)) => PoincareSpec { matrix: m.clone(), translation: t.translation.clone().unwrap_or_else(zero) },
        _ => return Err(CliError::Input(format!("transform '{}' needs exactly one of class or matrix", t.name))),
    };
    let map = spec.to_f64()?;
    let exact = spec.to_exact().ok().filter(|m| m.linear().is_exactly_lorentz());
    Ok(LoadedTransform { name: t.name.clone(), map, exact })
}

/// Resolves a transform by scenario name, then by component name.
pub fn find_transform(loaded: &Loaded, name: &str) -> CliResult<LoadedTransform> {
    if let Some(t) = loaded.transforms.iter().find(|t| t.name == name) {
        return Ok(t.clone());
    }
    let class = class_by_name(name)
        .ok_or_else(|| CliError::Input(format!("no transform named '{name}' in the scenario, and not one of E, T, S, TS")))?;
    let exact = PoincareMap::lorentz(representative::<Rational>(class))?;
    Ok(LoadedTransform { name: name.into(), map: exact.to_f64(), exact: Some(exact) })
}

/// Total external field acting on particles, polynomial when possible.
pub enum Combined {
    Poly(PolyForm),
    Sampled(SampledForm),
}

impl Combined {
    pub fn as_field(&self) -> &dyn FormField {
        match self {
            Combined::Poly(p) => p,
            Combined::Sampled(s) => s,
        }
    }

    /// `(φ⁻¹)^*` of the field, exactly when polynomial.
    pub fn pulled_back(&self, t: &LoadedTransform) -> CliResult<Combined> {
        Ok(match self {
            Combined::Poly(p) => {
                let exact = t.exact.clone().unwrap_or_else(|| t.map.to_rational());
                Combined::Poly(mparity::transform::pullback_form(&exact, p)?)
            }
            Combined::Sampled(s) => Combined::Sampled(mparity::transform::pullback_form(&t.map, s)?),
        })
    }
}

impl Loaded {
    pub fn combined_field(&self) -> CliResult<Combined> {
        let parity = self.scheme.field_parity();
        let mut poly = PolyForm::zero(2, parity);
        let mut sampled: Option<SampledForm> = None;
        for f in &self.fields {
            match &f.field {
                Field::Poly { field, .. } => poly = poly.try_add(field)?,
                Field::Coulomb { charge, exclusion_radius } => {
                    let s = coulomb_system(*charge, *exclusion_radius, self.scheme, self.spec.c)?.field;
                    sampled = Some(match sampled {
                        Some(acc) => acc.try_sub(&s.scale(-1.0)),
                        None => s,
                    });
                }
            }
        }
        Ok(match sampled {
            None => Combined::Poly(poly),
            Some(s) => Combined::Sampled(s.try_sub(&SampledForm::from_poly(&poly).scale(-1.0))),
        })
    }

    pub fn particle(&self, k: usize) -> CliResult<(String, ParticleParams, PhasePoint)> {
        let p = &self.spec.particles[k];
        let name = p.name.clone().unwrap_or_else(|| format!("particle{k}"));
        let params = ParticleParams::new(p.mass, p.charge, p.scheme)?;
        let (x, u) = (Vec4(p.start.x), Vec4(p.start.u));
        let start = if p.start.normalize { PhasePoint::natural(x, u, &params)? } else { PhasePoint::new(x, u, &params)? };
        Ok((name, params, start))
    }

    pub fn particle_names(&self) -> Vec<String> {
        (0..self.spec.particles.len())
            .map(|k| self.spec.particles[k].name.clone().unwrap_or_else(|| format!("particle{k}")))
            .collect()
    }

    /// Output directory: `outputs.dir` relative to the scenario, the
    /// override if given, else `<stem>_out` next to the scenario.
    pub fn out_dir(&self, override_dir: Option<&Path>) -> PathBuf {
        if let Some(d) = override_dir {
            return d.to_path_buf();
        }
        let base = self.path.parent().unwrap_or(Path::new("."));
        match &self.spec.outputs.dir {
            Some(d) => base.join(d),
            None => {
                let stem = self.path.file_stem().and_then(|s| s.to_str()).unwrap_or("scenario");
                base.join(format!("{stem}_out"))
            }
        }
    }
}

/// Exact system for a polynomial field entry.
pub fn poly_system(field: &PolyForm, current: Option<&PolyForm>, scheme: Scheme, c: f64) -> CliResult<EMSystem<PolyForm>> {
    let sys = EMSystem::source_free(field.clone(), scheme, c)?;
    Ok(match current {
        Some(j) => sys.with_current(j.clone())?,
        None => sys,
    })
}
