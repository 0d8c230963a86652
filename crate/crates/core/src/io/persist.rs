use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::RunConfig;
use super::table::Preprocessing;
use crate::ensemble::Ensemble;
use crate::error::{Error, Result};
use crate::params::TriBParameters;
use crate::spec::ElicitationSpec;

pub const FORMAT_TAG: &str = "electre-tree-ensemble/1";

/// Everything needed to reuse an elicitation: the models, how the training
/// data was preprocessed, and the merged parameters. Stored as JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleFile {
    pub format: String,
    pub config: RunConfig,
    /// Best to worst.
    pub class_names: Vec<String>,
    pub preprocessing: Preprocessing,
    /// `(min, max)` per criterion in matrix units.
    pub observed_ranges: Vec<(f64, f64)>,
    pub spec: ElicitationSpec,
    pub merged: TriBParameters,
    pub ensemble: Ensemble,
}

impl EnsembleFile {
    /// The models used for voting, after the configured trim.
    pub fn active(&self) -> Result<Ensemble> {
        match self.config.trim {
            Some(floor) => self.ensemble.trimmed(floor),
            None => Ok(self.ensemble.clone()),
        }
    }

    pub fn class_name(&self, class: usize) -> &str {
        &self.class_names[self.class_names.len() - 1 - class]
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Tag {
            format: String,
        }
        let tag: Tag = serde_json::from_str(text)?;
        if tag.format != FORMAT_TAG {
            return Err(Error::Config(format!(
                "unsupported ensemble format '{}', expected '{FORMAT_TAG}'",
                tag.format
            )));
        }
        Ok(serde_json::from_str(text)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n").map_err(|source| Error::File {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::File {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }
}
