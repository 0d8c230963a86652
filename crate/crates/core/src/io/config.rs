use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::clustering::DEFAULT_RESTARTS;
use crate::ensemble::EnsembleConfig;
use crate::error::{Error, Result};
use crate::evolve::GaConfig;
use crate::matrix::DecisionMatrix;
use crate::spec::{ElicitationSpec, GeneBound, ParamRef};
use crate::tri_b::Rule;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    #[default]
    Max,
    Min,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    #[default]
    None,
    /// `(x - min) / (max - min)`, reversed for min-direction criteria.
    MinMax,
}

impl std::str::FromStr for Normalization {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "none" => Ok(Normalization::None),
            "minmax" => Ok(Normalization::MinMax),
            _ => Err(format!("unknown normalization '{s}', expected none or minmax")),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReferenceSource {
    /// Ordered k-means++ clusters.
    #[default]
    Clusters,
    /// Assignment examples read from `label_column`.
    Labels,
}

/// A bound as written in a config file: a number fixes the gene, a table
/// `{ lo, hi }` frees it, `"none"` disables a veto.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DeclBound {
    Fixed(#[serde(with = "crate::params::inf_serde")] f64),
    Range { lo: f64, hi: f64 },
}

impl DeclBound {
    pub fn to_bound(self) -> GeneBound {
        match self {
            DeclBound::Fixed(v) => GeneBound::Fixed(v),
            DeclBound::Range { lo, hi } => GeneBound::Free { lo, hi },
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CriterionBounds {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<DeclBound>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<DeclBound>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<DeclBound>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<DeclBound>,
    /// One entry per profile, worst to best.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profiles: Option<Vec<DeclBound>>,
}

/// Declarative [`ElicitationSpec`]: anything not mentioned keeps its default
/// interval. Top-level `weight`, `q`, `p`, `v` apply to every criterion and
/// are overridden per criterion. Values are in matrix units, i.e. after
/// normalization.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpecConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<DeclBound>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<DeclBound>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<DeclBound>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<DeclBound>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<DeclBound>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub criteria: BTreeMap<String, CriterionBounds>,
}

impl SpecConfig {
    pub fn build(&self, matrix: &DecisionMatrix, k: usize) -> Result<ElicitationSpec> {
        let mut b = ElicitationSpec::builder(matrix, k)?;
        let n_profiles = k - 1;
        for j in 0..matrix.n_criteria() {
            let per = self.criteria.get(&matrix.criteria()[j]);
            let pick = |global: Option<DeclBound>, local: Option<DeclBound>| local.or(global);
            let entries = [
                (ParamRef::Weight(j), pick(self.weight, per.and_then(|c| c.weight))),
                (ParamRef::Q(j), pick(self.q, per.and_then(|c| c.q))),
                (ParamRef::P(j), pick(self.p, per.and_then(|c| c.p))),
                (ParamRef::V(j), pick(self.v, per.and_then(|c| c.v))),
            ];
            for (r, d) in entries {
                if let Some(d) = d {
                    b = b.set(r, d.to_bound());
                }
            }
            if let Some(profiles) = per.and_then(|c| c.profiles.as_ref()) {
                if profiles.len() != n_profiles {
                    return Err(Error::Config(format!(
                        "criterion '{}': {} profile bounds given, {} expected",
                        matrix.criteria()[j],
                        profiles.len(),
                        n_profiles
                    )));
                }
                for (h, d) in profiles.iter().enumerate() {
                    b = b.set(
                        ParamRef::Profile {
                            profile: h,
                            criterion: j,
                        },
                        d.to_bound(),
                    );
                }
            }
        }
        if let Some(d) = self.lambda {
            b = b.set(ParamRef::Lambda, d.to_bound());
        }
        b.build()
    }

    fn check_names(&self, criteria: &[String]) -> Result<()> {
        match self.criteria.keys().find(|c| !criteria.contains(c)) {
            Some(c) => Err(Error::UnknownCriterion(c.clone())),
            None => Ok(()),
        }
    }
}

/// Everything an `elicit` run needs, typically read from TOML.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// CSV path; relative paths resolve against the config file.
    pub dataset: PathBuf,
    /// Criterion columns to use; all non-label columns when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criteria: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label_column: Option<String>,
    pub normalization: Normalization,
    /// Number of classes.
    pub k: usize,
    /// Display names from best to worst; `A`, `B`, ... by default.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_names: Option<Vec<String>>,
    pub rule: Rule,
    pub reference: ReferenceSource,
    pub n_models: usize,
    pub sample_fraction: f64,
    pub seed: u64,
    pub cluster_restarts: usize,
    /// Models below this accuracy are dropped before vote and merge.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trim: Option<f64>,
    /// Unlisted criteria are maximized.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub directions: BTreeMap<String, Direction>,
    pub ga: GaConfig,
    pub spec: SpecConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        let e = EnsembleConfig::default();
        Self {
            dataset: PathBuf::new(),
            criteria: None,
            label_column: None,
            normalization: Normalization::None,
            k: 0,
            class_names: None,
            rule: e.rule,
            reference: ReferenceSource::Clusters,
            n_models: e.n_models,
            sample_fraction: e.sample_fraction,
            seed: e.seed,
            cluster_restarts: DEFAULT_RESTARTS,
            trim: None,
            directions: BTreeMap::new(),
            ga: e.ga,
            spec: SpecConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn to_toml(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }

    /// Reads a TOML file and resolves `dataset` relative to it.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::File {
            path: path.to_path_buf(),
            source,
        })?;
        let mut config = Self::from_toml(&text)?;
        if config.dataset.is_relative() && !config.dataset.as_os_str().is_empty() {
            if let Some(dir) = path.parent() {
                config.dataset = dir.join(&config.dataset);
            }
        }
        Ok(config)
    }

    /// Checks that do not need the data.
    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::Config(format!("k must be at least 2, got {}", self.k)));
        }
        if !(self.sample_fraction > 0.0 && self.sample_fraction <= 1.0) {
            return Err(Error::Config(format!(
                "sample_fraction must lie in (0, 1], got {}",
                self.sample_fraction
            )));
        }
        if self.n_models == 0 {
            return Err(Error::Config("n_models must be at least 1".into()));
        }
        if self.cluster_restarts == 0 {
            return Err(Error::Config("cluster_restarts must be at least 1".into()));
        }
        if let Some(t) = self.trim {
            if !(0.0..=1.0).contains(&t) {
                return Err(Error::Config(format!("trim must lie in [0, 1], got {t}")));
            }
        }
        if let Some(names) = &self.class_names {
            if names.len() != self.k {
                return Err(Error::Config(format!(
                    "{} class names given for k = {}",
                    names.len(),
                    self.k
                )));
            }
            let mut sorted = names.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != names.len() {
                return Err(Error::Config("class names must be distinct".into()));
            }
        }
        if self.reference == ReferenceSource::Labels && self.label_column.is_none() {
            return Err(Error::Config("reference = \"labels\" needs label_column".into()));
        }
        self.ga.validate()
    }

    /// Class names from best to worst.
    pub fn class_names(&self) -> Vec<String> {
        self.class_names.clone().unwrap_or_else(|| default_class_names(self.k))
    }

    pub fn direction(&self, criterion: &str) -> Direction {
        self.directions.get(criterion).copied().unwrap_or_default()
    }

    pub fn ensemble_config(&self) -> EnsembleConfig {
        EnsembleConfig {
            n_models: self.n_models,
            sample_fraction: self.sample_fraction,
            ga: self.ga.clone(),
            rule: self.rule,
            seed: self.seed,
            cluster_restarts: self.cluster_restarts,
        }
    }

    pub fn build_spec(&self, matrix: &DecisionMatrix) -> Result<ElicitationSpec> {
        self.spec.check_names(matrix.criteria())?;
        self.spec.build(matrix, self.k)
    }
}

/// `A`, `B`, ... best first; past `Z` names continue as `C27`, `C28`, ...
pub fn default_class_names(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| {
            if i < 26 {
                char::from(b'A' + i as u8).to_string()
            } else {
                format!("C{}", i + 1)
            }
        })
        .collect()
}
