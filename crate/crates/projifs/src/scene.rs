//! Scene files: JSON with an explicit version, strict keys and every
//! default written back into the effective configuration.

use std::path::Path;

use projifs_core::certify::SearchBudget;
use projifs_core::engine::{AttractorParams, Ifs};
use projifs_core::index::IndexParams;
use projifs_core::ProjMap;
use serde::{Deserialize, Serialize};

pub const SCENE_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum SceneError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid value for `{field}`: {message}")]
    Validation { field: String, message: String },
}

fn invalid(field: impl Into<String>, message: impl Into<String>) -> SceneError {
    SceneError::Validation { field: field.into(), message: message.into() }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    #[serde(default)]
    pub name: String,
    /// Row-major `(n+1) × (n+1)` entries.
    pub matrix: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Parameters {
    pub tol: f64,
    pub max_iter: usize,
    pub max_work: usize,
    pub cloud_cap: usize,
    pub stable_steps: usize,
    pub chaos_points: usize,
    pub burn_in: usize,
    pub seed: u64,
    pub grid: usize,
    pub render_size: usize,
    pub max_level: usize,
    pub halvings: usize,
}

impl Default for Parameters {
    fn default() -> Self {
        let a = AttractorParams::default();
        let b = SearchBudget::default();
        Parameters {
            tol: a.tol,
            max_iter: a.max_iter,
            max_work: a.max_work,
            cloud_cap: a.cap,
            stable_steps: a.stable_steps,
            chaos_points: 100_000,
            burn_in: b.burn_in,
            seed: 42,
            grid: 1024,
            render_size: 800,
            max_level: b.max_level,
            halvings: b.halvings,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Output {
    Cloud,
    Png,
    Pgm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneConfig {
    pub version: u32,
    #[serde(default)]
    pub name: String,
    pub dim: usize,
    pub maps: Vec<MapSpec>,
    #[serde(default)]
    pub parameters: Parameters,
    #[serde(default = "all_outputs")]
    pub outputs: Vec<Output>,
}

fn all_outputs() -> Vec<Output> {
    vec![Output::Cloud, Output::Png, Output::Pgm]
}

impl SceneConfig {
    pub fn new(name: &str, dim: usize, maps: Vec<MapSpec>) -> SceneConfig {
        SceneConfig { version: SCENE_VERSION, name: name.into(), dim, maps, parameters: Parameters::default(), outputs: all_outputs() }
    }

    /// A scene for an existing system, with default parameters.
    pub fn from_ifs(name: &str, f: &Ifs) -> SceneConfig {
        let maps = f
            .maps()
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let (raw, n) = m.matrix().row_major();
                MapSpec { name: format!("f{}", k + 1), matrix: raw[..n].to_vec() }
            })
            .collect();
        SceneConfig::new(name, f.dim().n(), maps)
    }

    pub fn ifs(&self) -> Ifs {
        build_ifs(self).expect("validated scene")
    }

    pub fn attractor_params(&self) -> AttractorParams {
        let p = &self.parameters;
        AttractorParams { tol: p.tol, max_iter: p.max_iter, cap: p.cloud_cap, max_work: p.max_work, stable_steps: p.stable_steps }
    }

    pub fn budget(&self) -> SearchBudget {
        let p = &self.parameters;
        SearchBudget {
            attractor: self.attractor_params(),
            seed: p.seed,
            chaos_points: p.chaos_points,
            burn_in: p.burn_in,
            max_level: p.max_level,
            halvings: p.halvings,
            ..SearchBudget::default()
        }
    }

    pub fn index_params(&self) -> IndexParams {
        IndexParams { budget: self.budget(), grid: self.parameters.grid, ..IndexParams::default() }
    }

    /// The effective configuration as one line of JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("scene serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene serializes")
    }

    pub fn wants(&self, o: Output) -> bool {
        self.outputs.contains(&o)
    }
}

fn build_ifs(s: &SceneConfig) -> Result<Ifs, SceneError> {
    let maps = s
        .maps
        .iter()
        .enumerate()
        .map(|(k, m)| ProjMap::from_row_major(&m.matrix).map_err(|e| invalid(format!("maps[{k}].matrix"), e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ifs::new(maps).map_err(|e| invalid("maps", e.to_string()))
}

fn validate(mut s: SceneConfig) -> Result<SceneConfig, SceneError> {
    if s.version != SCENE_VERSION {
        return Err(invalid("version", format!("unsupported version {}, expected {SCENE_VERSION}", s.version)));
    }
    if s.dim != 1 && s.dim != 2 {
        return Err(invalid("dim", format!("must be 1 or 2, got {}", s.dim)));
    }
    if s.maps.is_empty() {
        return Err(invalid("maps", "at least one map is required"));
    }
    let side = s.dim + 1;
    for (k, m) in s.maps.iter_mut().enumerate() {
        if m.matrix.len() != side * side {
            return Err(invalid(format!("maps[{k}].matrix"), format!("expected {} entries, got {}", side * side, m.matrix.len())));
        }
        if m.matrix.iter().any(|x| !x.is_finite()) {
            return Err(invalid(format!("maps[{k}].matrix"), "entries must be finite"));
        }
        if m.name.is_empty() {
            m.name = format!("f{}", k + 1);
        }
    }
    for k in 1..s.maps.len() {
        if s.maps[..k].iter().any(|m| m.name == s.maps[k].name) {
            return Err(invalid(format!("maps[{k}].name"), format!("duplicate name `{}`", s.maps[k].name)));
        }
    }
    build_ifs(&s)?;
    let p = &s.parameters;
    if !(p.tol > 0.0 && p.tol.is_finite()) {
        return Err(invalid("parameters.tol", "must be positive and finite"));
    }
    let positive = [
        ("parameters.max_iter", p.max_iter),
        ("parameters.max_work", p.max_work),
        ("parameters.cloud_cap", p.cloud_cap),
        ("parameters.stable_steps", p.stable_steps),
        ("parameters.chaos_points", p.chaos_points),
    ];
    for (field, v) in positive {
        if v == 0 {
            return Err(invalid(field, "must be at least 1"));
        }
    }
    if !(2..=projifs_core::render::MAX_SIDE).contains(&p.grid) {
        return Err(invalid("parameters.grid", format!("must be in 2..={}", projifs_core::render::MAX_SIDE)));
    }
    if !(1..=projifs_core::render::MAX_SIDE).contains(&p.render_size) {
        return Err(invalid("parameters.render_size", format!("must be in 1..={}", projifs_core::render::MAX_SIDE)));
    }
    if p.halvings > 60 {
        return Err(invalid("parameters.halvings", "at most 60"));
    }
    Ok(s)
}

pub fn parse_scene_str(text: &str) -> Result<SceneConfig, SceneError> {
    let raw: SceneConfig = serde_json::from_str(text).map_err(|e| SceneError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    validate(raw)
}

pub fn parse_scene(path: &Path) -> Result<SceneConfig, SceneError> {
    let text = std::fs::read_to_string(path).map_err(|source| SceneError::Io { path: path.display().to_string(), source })?;
    parse_scene_str(&text)
}

/// Re-validates after command-line overrides.
pub fn revalidate(s: SceneConfig) -> Result<SceneConfig, SceneError> {
    validate(s)
}
