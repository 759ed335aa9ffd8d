//! JSON input schemas and their conversion into core types.

use std::path::Path;
use std::sync::Arc;

use fuchsian_core::polyhedra::{NormalFamily, SupportVector};
use fuchsian_core::solver::SolverConfig;
use fuchsian_core::{FuchsianGroup, LorentzVector};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::error::CliError;

/// A built-in group name (`octagon`, `boost:<ℓ>`) or explicit generators.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Name(String),
    Matrices {
        dim: usize,
        generators: Vec<Vec<Vec<f64>>>,
        #[serde(default)]
        label: Option<String>,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub group: GroupSpec,
    pub normals: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyhedronSpec {
    pub group: GroupSpec,
    pub normals: Vec<Vec<f64>>,
    pub support: Vec<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigSpec {
    pub tol: Option<f64>,
    pub max_iter: Option<usize>,
    pub shrink: Option<f64>,
    pub min_step: Option<f64>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveSpec {
    pub family: FamilySpec,
    pub target_areas: Vec<f64>,
    #[serde(default)]
    pub config: ConfigSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixedSpec {
    pub group: GroupSpec,
    pub normals: Vec<Vec<f64>>,
    pub supports: Vec<Vec<f64>>,
}

/// Reads and parses a JSON file; `-` reads standard input.
pub fn load<T: DeserializeOwned>(path: &str) -> Result<T, CliError> {
    let text = if path == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::Io { path: path.into(), source: e })?
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.into(), source: e })?
    };
    parse(path, &text)
}

pub fn parse<T: DeserializeOwned>(path: &str, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Json {
        path: path.into(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

impl GroupSpec {
    pub fn resolve(&self) -> Result<FuchsianGroup, CliError> {
        match self {
            GroupSpec::Name(name) => named_group(name),
            GroupSpec::Matrices { dim, generators, label } => {
                let mats: Vec<Vec<f64>> = generators.iter().map(|m| m.iter().flatten().copied().collect()).collect();
                for (k, m) in generators.iter().enumerate() {
                    if m.len() != dim + 1 || m.iter().any(|r| r.len() != dim + 1) {
                        return Err(CliError::Validation(format!(
                            "generator {k} must be a {n}×{n} matrix",
                            n = dim + 1
                        )));
                    }
                }
                Ok(FuchsianGroup::from_matrices(*dim, &mats, label.as_deref().unwrap_or("custom"))?)
            }
        }
    }
}

/// `octagon` or `boost:<ℓ>`.
pub fn named_group(name: &str) -> Result<FuchsianGroup, CliError> {
    if name == "octagon" {
        return Ok(FuchsianGroup::octagon());
    }
    if let Some(ell) = name.strip_prefix("boost:") {
        let ell: f64 =
            ell.parse().map_err(|_| CliError::Validation(format!("bad translation length in group name {name:?}")))?;
        return Ok(FuchsianGroup::boost(ell)?);
    }
    Err(CliError::Validation(format!("unknown group {name:?} (expected \"octagon\" or \"boost:<length>\")")))
}

/// A group name, or a JSON file holding a group spec.
pub fn group_from_arg(arg: &str) -> Result<FuchsianGroup, CliError> {
    if arg == "octagon" || arg.starts_with("boost:") || !Path::new(arg).exists() {
        return named_group(arg);
    }
    load::<GroupSpec>(arg)?.resolve()
}

pub fn vectors(rows: &[Vec<f64>], what: &str) -> Result<Vec<LorentzVector>, CliError> {
    rows.iter()
        .enumerate()
        .map(|(k, r)| LorentzVector::new(r.clone()).map_err(|e| CliError::Validation(format!("{what} {k}: {e}"))))
        .collect()
}

pub fn family(group: &GroupSpec, normals: &[Vec<f64>]) -> Result<NormalFamily, CliError> {
    let g = Arc::new(group.resolve()?);
    Ok(NormalFamily::new(g, vectors(normals, "normal")?)?)
}

impl FamilySpec {
    pub fn family(&self) -> Result<NormalFamily, CliError> {
        family(&self.group, &self.normals)
    }
}

impl PolyhedronSpec {
    pub fn family(&self) -> Result<NormalFamily, CliError> {
        family(&self.group, &self.normals)
    }

    pub fn support(&self) -> Result<SupportVector, CliError> {
        support(&self.support, self.normals.len())
    }
}

pub fn support(values: &[f64], n: usize) -> Result<SupportVector, CliError> {
    if values.len() != n {
        return Err(CliError::Validation(format!("expected {n} support numbers, got {}", values.len())));
    }
    Ok(SupportVector::new(values.to_vec())?)
}

impl ConfigSpec {
    pub fn config(&self) -> Result<SolverConfig, CliError> {
        let d = SolverConfig::default();
        let cfg = SolverConfig {
            tol: self.tol.unwrap_or(d.tol),
            max_iter: self.max_iter.unwrap_or(d.max_iter),
            shrink: self.shrink.unwrap_or(d.shrink),
            min_step: self.min_step.unwrap_or(d.min_step),
            seed: self.seed.unwrap_or(d.seed),
        };
        if !(cfg.tol > 0.0) || cfg.max_iter == 0 {
            return Err(CliError::Validation("config needs tol > 0 and max_iter ≥ 1".into()));
        }
        Ok(cfg)
    }
}
