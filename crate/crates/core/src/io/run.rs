use std::fmt::Write as _;
use std::io::Read;

use super::config::{ReferenceSource, RunConfig};
use super::persist::{EnsembleFile, FORMAT_TAG};
use super::report::{ElicitReport, VoteTable};
use super::table::{load_dataset, load_with_preprocessing, Dataset};
use crate::clustering::{cluster, cluster_ranks, order_clusters, Clustering};
use crate::ensemble::{build_ensemble, merge_parameters, vote_classify, Reference};
use crate::error::{Error, Result};
use crate::labels::ReferenceLabels;
use crate::matrix::DecisionMatrix;
use crate::params::TriBParameters;
use crate::tri_b::{assign, Rule};

pub const HISTOGRAM_BINS: usize = 10;

#[derive(Clone, Debug)]
pub struct ElicitOutcome {
    pub file: EnsembleFile,
    pub report: ElicitReport,
}

/// Loads `config.dataset` and runs [`elicit`].
pub fn run_elicit(config: &RunConfig) -> Result<ElicitOutcome> {
    config.validate()?;
    elicit(config, load_dataset(config)?)
}

/// Builds the ensemble, merges its parameters and votes on the training
/// alternatives. Accuracies are measured against the reference the models
/// were fitted to.
pub fn elicit(config: &RunConfig, data: Dataset) -> Result<ElicitOutcome> {
    config.validate()?;
    let matrix = &data.matrix;
    let spec = config.build_spec(matrix)?;
    let (reference, truth) = match config.reference {
        ReferenceSource::Labels => {
            let l = data
                .labels
                .clone()
                .ok_or_else(|| Error::Config("reference = \"labels\" but no labels were loaded".into()))?;
            (Reference::Labels(l.clone()), l)
        }
        ReferenceSource::Clusters => {
            let c = cluster(matrix, config.k, config.seed, config.cluster_restarts)?;
            (Reference::Clusters { k: config.k }, order_clusters(&c)?)
        }
    };
    let ensemble = build_ensemble(matrix, &reference, &spec, &config.ensemble_config())?;
    let active = match config.trim {
        Some(floor) => ensemble.trimmed(floor)?,
        None => ensemble.clone(),
    };
    let merged = merge_parameters(&active, &spec)?;
    let votes = vote_classify(&active, matrix)?;
    let merged_classes = assign(matrix, &merged, config.rule)?.classes;
    let report = ElicitReport {
        criteria: matrix.criteria().to_vec(),
        merged: merged.clone(),
        models_total: ensemble.models.len(),
        models_used: active.models.len(),
        mean_accuracy: ensemble.mean_accuracy(),
        perfect_share: ensemble.perfect_share(),
        merged_accuracy: truth.accuracy(&merged_classes)?,
        vote_accuracy: truth.accuracy(&votes.winners)?,
        histogram: ensemble.accuracy_histogram(HISTOGRAM_BINS),
        votes: VoteTable {
            alternatives: matrix.alternatives().to_vec(),
            class_names: config.class_names(),
            votes,
            merged_classes,
            reference: Some(truth.labels().to_vec()),
        },
    };
    let file = EnsembleFile {
        format: FORMAT_TAG.to_owned(),
        config: config.clone(),
        class_names: config.class_names(),
        preprocessing: data.preprocessing.clone(),
        observed_ranges: (0..matrix.n_criteria()).map(|j| matrix.column_range(j)).collect(),
        spec,
        merged,
        ensemble,
    };
    Ok(ElicitOutcome { file, report })
}

#[derive(Clone, Debug)]
pub struct ClassifyOutcome {
    pub matrix: DecisionMatrix,
    pub table: VoteTable,
    /// Whether the new data is the training data, bit for bit.
    pub fingerprint_matches: bool,
}

/// Votes on new alternatives after replaying the training preprocessing.
pub fn run_classify<R: Read>(file: &EnsembleFile, csv: R) -> Result<ClassifyOutcome> {
    let matrix = load_with_preprocessing(csv, &file.preprocessing)?;
    classify_matrix(file, matrix)
}

pub fn classify_matrix(file: &EnsembleFile, matrix: DecisionMatrix) -> Result<ClassifyOutcome> {
    let missing: Vec<String> = file
        .ensemble
        .criteria
        .iter()
        .filter(|c| matrix.criterion_index(c).is_none())
        .cloned()
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingCriteria(missing));
    }
    let cols: Vec<usize> = file
        .ensemble
        .criteria
        .iter()
        .map(|c| matrix.criterion_index(c).unwrap())
        .collect();
    let all: Vec<usize> = (0..matrix.n_alternatives()).collect();
    let matrix = matrix.select(&all, &cols);
    let active = file.active()?;
    let votes = vote_classify(&active, &matrix)?;
    let merged_classes = assign(&matrix, &file.merged, active.rule)?.classes;
    let fingerprint_matches = matrix.fingerprint() == file.ensemble.fingerprint;
    Ok(ClassifyOutcome {
        table: VoteTable {
            alternatives: matrix.alternatives().to_vec(),
            class_names: file.class_names.clone(),
            votes,
            merged_classes,
            reference: None,
        },
        matrix,
        fingerprint_matches,
    })
}

#[derive(Clone, Debug)]
pub struct ClusterOutcome {
    pub clustering: Clustering,
    pub labels: ReferenceLabels,
    pub criteria: Vec<String>,
    pub alternatives: Vec<String>,
    /// Best to worst.
    pub class_names: Vec<String>,
}

pub fn run_cluster(config: &RunConfig) -> Result<ClusterOutcome> {
    config.validate()?;
    let data = load_dataset(config)?;
    let clustering = cluster(&data.matrix, config.k, config.seed, config.cluster_restarts)?;
    let labels = order_clusters(&clustering)?;
    Ok(ClusterOutcome {
        clustering,
        labels,
        criteria: data.matrix.criteria().to_vec(),
        alternatives: data.matrix.alternatives().to_vec(),
        class_names: config.class_names(),
    })
}

impl ClusterOutcome {
    /// Centroids from the best class down, then one line per alternative.
    pub fn render(&self) -> String {
        let k = self.class_names.len();
        let ranks = cluster_ranks(&self.clustering);
        let mut by_rank: Vec<usize> = (0..k).collect();
        by_rank.sort_by_key(|&c| std::cmp::Reverse(ranks[c]));
        let mut out = String::from("[Centroids]\n");
        let _ = writeln!(out, "class  size  {}", self.criteria.join("  "));
        for c in by_rank {
            let size = self.clustering.membership.iter().filter(|&&m| m == c).count();
            let coords: Vec<String> = self.clustering.centroids[c].iter().map(|v| v.to_string()).collect();
            let _ = writeln!(
                out,
                "{}  {}  {}",
                self.class_names[k - 1 - ranks[c]],
                size,
                coords.join("  ")
            );
        }
        out.push_str("\n[Assignments]\n");
        for (id, l) in self.alternatives.iter().zip(self.labels.labels()) {
            let _ = writeln!(
                out,
                "{id}  {}",
                self.class_names[k - 1 - l.expect("clusters label every row")]
            );
        }
        out
    }
}

/// Plain ELECTRE Tri-B with fully specified parameters; one line per
/// alternative.
pub fn run_trib(
    matrix: &DecisionMatrix,
    params: &TriBParameters,
    rule: Rule,
    class_names: &[String],
) -> Result<String> {
    if class_names.len() != params.n_classes() {
        return Err(Error::Config(format!(
            "{} class names for {} classes",
            class_names.len(),
            params.n_classes()
        )));
    }
    let a = assign(matrix, params, rule)?;
    let k = class_names.len();
    let mut out = String::new();
    for (id, &c) in matrix.alternatives().iter().zip(&a.classes) {
        let _ = writeln!(out, "{id}  {}", class_names[k - 1 - c]);
    }
    Ok(out)
}

/// Reads parameters from JSON (`.json`) or TOML (anything else).
pub fn load_parameters(path: &std::path::Path) -> Result<TriBParameters> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::File {
        path: path.to_path_buf(),
        source,
    })?;
    if path.extension().is_some_and(|e| e == "json") {
        Ok(serde_json::from_str(&text)?)
    } else {
        Ok(toml::from_str(&text)?)
    }
}
