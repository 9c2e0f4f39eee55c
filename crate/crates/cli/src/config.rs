//! Scenario configuration. All values are in natural units (ħ = c = 1,
//! lengths in units of 1/k0 when the excited atom has k_trans = 1).

use std::path::{Path, PathBuf};

use dyncp::quadrature::QuadratureSpec;
use dyncp::scene::{Atom, Role, Scene, Vec3};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub atoms: Vec<AtomConfig>,
    pub sweep: Sweep,
    pub quantities: Vec<Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadrature: Option<QuadratureOverrides>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validate: Option<ValidateConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomConfig {
    pub position: Vec3,
    pub k_trans: f64,
    pub mu2: f64,
    pub role: RoleName,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RoleName {
    Ground,
    Excited,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub time: TimeGrid,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<GeometrySweep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub t_min: f64,
    pub t_max: f64,
    pub steps: usize,
}

impl TimeGrid {
    /// `steps` evenly spaced times from `t_min` to `t_max` inclusive.
    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.t_min];
        }
        let dt = (self.t_max - self.t_min) / (self.steps - 1) as f64;
        (0..self.steps).map(|i| if i + 1 == self.steps { self.t_max } else { self.t_min + dt * i as f64 }).collect()
    }
}

/// Named geometry parameter swept in the outer loop.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySweep {
    pub parameter: GeometryParameter,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeometryParameter {
    /// Multiplies every position about the excited atom.
    Scale,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Corr,
    Pair,
    PairParts,
    Sym,
    SymParts,
    Regions,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abs_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_subdivisions: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidateConfig {
    /// Box sides in units of 1/k0.
    pub box_sides: Vec<f64>,
    /// Mode cutoff in units of k0.
    pub k_max: f64,
    /// Time at which the correlation is compared.
    pub t: f64,
}

impl Default for ValidateConfig {
    fn default() -> Self {
        ValidateConfig { box_sides: vec![20.0, 30.0, 40.0], k_max: 20.0, t: 0.0 }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: toml::de::Error },
    #[error("invalid config: {0}")]
    Invalid(String),
}

impl ScenarioConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.into(), source })?;
        let cfg: ScenarioConfig =
            toml::from_str(&text).map_err(|source| ConfigError::Parse { path: path.into(), source })?;
        cfg.check()?;
        Ok(cfg)
    }

    #[cfg(test)]
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn check(&self) -> Result<(), ConfigError> {
        let bad = |msg: String| Err(ConfigError::Invalid(msg));
        if self.atoms.len() != 3 {
            return bad(format!("atoms: expected 3 entries, found {}", self.atoms.len()));
        }
        let t = self.sweep.time;
        if t.steps == 0 {
            return bad("sweep.time.steps: must be at least 1".into());
        }
        if !(t.t_min >= 0.0 && t.t_max >= t.t_min && t.t_max.is_finite()) {
            return bad(format!("sweep.time: need 0 <= t_min <= t_max, got {} .. {}", t.t_min, t.t_max));
        }
        if let Some(g) = &self.sweep.geometry {
            if g.values.is_empty() {
                return bad("sweep.geometry.values: must not be empty".into());
            }
            if g.values.windows(2).any(|w| !(w[1] > w[0])) || g.values.iter().any(|v| !(*v > 0.0)) {
                return bad("sweep.geometry.values: must be positive and strictly increasing".into());
            }
        }
        if self.quantities.is_empty() {
            return bad("quantities: must not be empty".into());
        }
        if let Some(v) = &self.validate {
            if v.box_sides.is_empty() || v.box_sides.iter().any(|l| !(*l > 0.0)) || !(v.k_max > 0.0) {
                return bad("validate: box_sides and k_max must be positive".into());
            }
        }
        // surfaces role and geometry errors before any evaluation
        self.scene(1.0).map(|_| ()).map_err(|e| ConfigError::Invalid(format!("atoms: {e}")))
    }

    /// Scene with every position scaled by `scale` about the excited atom.
    pub fn scene(&self, scale: f64) -> dyncp::Result<Scene> {
        let origin = self
            .atoms
            .iter()
            .find(|a| a.role == RoleName::Excited)
            .map(|a| a.position)
            .unwrap_or([0.0; 3]);
        let atom = |a: &AtomConfig| {
            let p = [0, 1, 2].map(|i| origin[i] + scale * (a.position[i] - origin[i]));
            let role = match a.role {
                RoleName::Ground => Role::Ground,
                RoleName::Excited => Role::Excited,
            };
            Atom::new(p, a.k_trans, a.mu2, role)
        };
        Scene::build(atom(&self.atoms[0])?, atom(&self.atoms[1])?, atom(&self.atoms[2])?)
    }

    pub fn scales(&self) -> Vec<f64> {
        match &self.sweep.geometry {
            Some(g) => g.values.clone(),
            None => vec![1.0],
        }
    }

    pub fn quadrature_spec(&self, rel_tol: Option<f64>) -> QuadratureSpec {
        let mut spec = QuadratureSpec::default();
        if let Some(q) = &self.quadrature {
            spec.rel_tol = q.rel_tol.unwrap_or(spec.rel_tol);
            spec.abs_tol = q.abs_tol.unwrap_or(spec.abs_tol);
            spec.max_subdivisions = q.max_subdivisions.unwrap_or(spec.max_subdivisions);
        }
        if let Some(r) = rel_tol {
            spec.rel_tol = r;
        }
        spec
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
quantities = ["pair_parts", "sym"]

[[atoms]]
position = [3.0, 0.0, 0.0]
k_trans = 1.5
mu2 = 1.0
role = "ground"

[[atoms]]
position = [0.5, 2.9, 0.0]
k_trans = 2.0
mu2 = 1.0
role = "ground"

[[atoms]]
position = [0.0, 0.0, 0.0]
k_trans = 1.0
mu2 = 1.2
role = "excited"

[sweep.time]
t_min = 0.0
t_max = 6.0
steps = 7
"#;

    #[test]
    fn round_trips_through_toml() {
        let cfg: ScenarioConfig = toml::from_str(SAMPLE).unwrap();
        cfg.check().unwrap();
        let again: ScenarioConfig = toml::from_str(&cfg.to_toml()).unwrap();
        assert_eq!(cfg, again);
    }

    #[test]
    fn time_grid_hits_both_ends() {
        let g = TimeGrid { t_min: 0.1, t_max: 0.7, steps: 4 };
        let p = g.points();
        assert_eq!(p.len(), 4);
        assert_eq!((p[0], p[3]), (0.1, 0.7));
    }

    #[test]
    fn unknown_quantity_is_reported_with_its_line() {
        let text = SAMPLE.replace("\"sym\"", "\"energy\"");
        let err = toml::from_str::<ScenarioConfig>(&text).unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
    }

    #[test]
    fn two_excited_atoms_are_rejected() {
        let text = SAMPLE.replacen("\"ground\"", "\"excited\"", 1);
        let cfg: ScenarioConfig = toml::from_str(&text).unwrap();
        assert!(matches!(cfg.check(), Err(ConfigError::Invalid(_))));
    }
}
