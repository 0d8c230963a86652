//! Bootstrap ensembles of ELECTRE Tri-B models: each model sees a sample of
//! alternatives and criteria, gets its free parameters from the GA, and the
//! ensemble classifies by majority vote or through averaged parameters.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clustering::{cluster, order_clusters, DEFAULT_RESTARTS};
use crate::error::{Error, Result};
use crate::evolve::{clip_chromosome, ga_optimize, Chromosome, GaConfig};
use crate::labels::ReferenceLabels;
use crate::matrix::DecisionMatrix;
use crate::params::{validate_parameters, TriBParameters};
use crate::spec::ElicitationSpec;
use crate::tri_b::{Engine, Rule};

pub const MAX_RESAMPLES: usize = 100;

/// What the GA aligns each model with.
#[derive(Clone, Debug, PartialEq)]
pub enum Reference {
    /// Assignment examples over the full matrix (possibly partial).
    Labels(ReferenceLabels),
    /// Ordered k-means++ clusters with `k` classes.
    Clusters { k: usize },
}

impl Reference {
    pub fn k(&self) -> usize {
        match self {
            Reference::Labels(l) => l.k(),
            Reference::Clusters { k } => *k,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    pub n_models: usize,
    pub sample_fraction: f64,
    /// The `seed` field is ignored; each model derives its own.
    pub ga: GaConfig,
    pub rule: Rule,
    pub seed: u64,
    pub cluster_restarts: usize,
}

impl Default for EnsembleConfig {
    fn default() -> Self {
        Self {
            n_models: 1000,
            sample_fraction: 0.25,
            ga: GaConfig::default(),
            rule: Rule::Pessimistic,
            seed: 0,
            cluster_restarts: DEFAULT_RESTARTS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelRecord {
    /// Sampled rows, with repetitions, in draw order.
    pub alternative_indices: Vec<usize>,
    /// Distinct sampled columns, ascending.
    pub criterion_indices: Vec<usize>,
    /// Parameters over `criterion_indices` only.
    pub params: TriBParameters,
    pub accuracy: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ensemble {
    pub models: Vec<ModelRecord>,
    pub class_count: usize,
    pub rule: Rule,
    pub criteria: Vec<String>,
    pub fingerprint: String,
    pub config: EnsembleConfig,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VoteResult {
    /// `counts[i][c]`: models placing alternative `i` in class `c`.
    pub counts: Vec<Vec<usize>>,
    pub winners: Vec<usize>,
}

/// Independent generator for model `index`: a ChaCha stream keyed by the
/// master seed, so any model can be rebuilt on its own.
pub fn model_rng(master_seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}

/// Number of row draws for a fraction of `n`; tolerant of `0.1 * 30` style
/// rounding noise.
pub fn sample_size(n: usize, fraction: f64) -> usize {
    ((fraction * n as f64) - 1e-9).ceil().max(1.0) as usize
}

/// Draws rows with replacement, then criteria with replacement until at
/// least two distinct ones appear; the criteria are deduplicated.
pub fn sample_model<R: Rng + ?Sized>(
    matrix: &DecisionMatrix,
    sample_fraction: f64,
    rng: &mut R,
) -> Result<(Vec<usize>, Vec<usize>)> {
    if !(sample_fraction > 0.0 && sample_fraction <= 1.0) {
        return Err(Error::invalid(format!(
            "sample fraction {sample_fraction} outside (0, 1]"
        )));
    }
    let n = matrix.n_alternatives();
    let m = matrix.n_criteria();
    if m < 2 {
        return Err(Error::invalid("need at least two criteria to sample"));
    }
    let rows = (0..sample_size(n, sample_fraction))
        .map(|_| rng.random_range(0..n))
        .collect();
    let mut cols: Vec<usize> = (0..m).map(|_| rng.random_range(0..m)).collect();
    cols.sort_unstable();
    cols.dedup();
    while cols.len() < 2 {
        let j = rng.random_range(0..m);
        if !cols.contains(&j) {
            cols.push(j);
            cols.sort_unstable();
        }
    }
    Ok((rows, cols))
}

fn subset_seed(master: u64, cols: &[usize]) -> u64 {
    cols.iter().fold(master ^ 0x5851_f42d_4c95_7f2d, |h, &j| {
        (h ^ (j as u64 + 1)).wrapping_mul(0x9e37_79b9_7f4a_7c15)
    })
}

struct Draw {
    rows: Vec<usize>,
    cols: Vec<usize>,
    ga_seed: u64,
}

/// Builds the ensemble. Models are optimized in parallel; the result only
/// depends on `config.seed`.
pub fn build_ensemble(
    matrix: &DecisionMatrix,
    reference: &Reference,
    spec: &ElicitationSpec,
    config: &EnsembleConfig,
) -> Result<Ensemble> {
    if config.n_models == 0 {
        return Err(Error::invalid("n_models must be at least 1"));
    }
    config.ga.validate()?;
    let k = reference.k();
    if k < 2 {
        return Err(Error::invalid("need at least 2 classes"));
    }
    if spec.n_classes() != k || spec.n_criteria() != matrix.n_criteria() {
        return Err(Error::invalid(format!(
            "spec shape ({} criteria, {} classes) does not match data ({} criteria, {} classes)",
            spec.n_criteria(),
            spec.n_classes(),
            matrix.n_criteria(),
            k
        )));
    }
    if let Reference::Labels(l) = reference {
        if l.len() != matrix.n_alternatives() {
            return Err(Error::invalid("label count does not match the matrix"));
        }
        if l.labeled_count() == 0 {
            return Err(Error::NoLabels);
        }
    }

    let draws: Vec<Draw> = (0..config.n_models)
        .into_par_iter()
        .map(|i| {
            let mut rng = model_rng(config.seed, i as u64);
            for _ in 0..MAX_RESAMPLES {
                let (rows, cols) = sample_model(matrix, config.sample_fraction, &mut rng)?;
                let usable = match reference {
                    Reference::Labels(l) => rows.iter().any(|&r| l.get(r).is_some()),
                    Reference::Clusters { .. } => true,
                };
                if usable {
                    return Ok(Draw {
                        rows,
                        cols,
                        ga_seed: rng.random(),
                    });
                }
            }
            Err(Error::ResampleExhausted(MAX_RESAMPLES))
        })
        .collect::<Result<_>>()?;

    // one clustering per distinct criterion subset, on every alternative
    let cluster_labels: BTreeMap<Vec<usize>, ReferenceLabels> = match reference {
        Reference::Labels(_) => BTreeMap::new(),
        Reference::Clusters { k } => {
            let mut subsets: Vec<Vec<usize>> = draws.iter().map(|d| d.cols.clone()).collect();
            subsets.sort();
            subsets.dedup();
            subsets
                .into_par_iter()
                .map(|cols| {
                    let sub = matrix.select(&(0..matrix.n_alternatives()).collect::<Vec<_>>(), &cols);
                    let c = cluster(&sub, *k, subset_seed(config.seed, &cols), config.cluster_restarts)?;
                    Ok((cols, order_clusters(&c)?))
                })
                .collect::<Result<_>>()?
        }
    };

    let models: Vec<ModelRecord> = draws
        .into_par_iter()
        .map(|d| {
            let labels = match reference {
                Reference::Labels(l) => l.select(&d.rows),
                Reference::Clusters { .. } => cluster_labels[&d.cols].select(&d.rows),
            };
            let sub = matrix.select(&d.rows, &d.cols);
            let sub_spec = spec.restrict(&d.cols)?;
            let ga = GaConfig {
                seed: d.ga_seed,
                ..config.ga.clone()
            };
            let out = ga_optimize(&sub, &labels, &sub_spec, &ga, config.rule)?;
            Ok(ModelRecord {
                alternative_indices: d.rows,
                criterion_indices: d.cols,
                params: out.params,
                accuracy: out.accuracy,
            })
        })
        .collect::<Result<_>>()?;

    Ok(Ensemble {
        models,
        class_count: k,
        rule: config.rule,
        criteria: matrix.criteria().to_vec(),
        fingerprint: matrix.fingerprint(),
        config: config.clone(),
    })
}

impl Ensemble {
    /// Drops models whose accuracy is below `floor`.
    pub fn trimmed(&self, floor: f64) -> Result<Ensemble> {
        let models: Vec<_> = self.models.iter().filter(|m| m.accuracy >= floor).cloned().collect();
        if models.is_empty() {
            return Err(Error::EmptyEnsemble(" after trimming"));
        }
        Ok(Ensemble { models, ..self.clone() })
    }

    pub fn mean_accuracy(&self) -> f64 {
        self.models.iter().map(|m| m.accuracy).sum::<f64>() / self.models.len() as f64
    }

    /// Share of models with accuracy exactly 1.
    pub fn perfect_share(&self) -> f64 {
        self.models.iter().filter(|m| m.accuracy >= 1.0).count() as f64 / self.models.len() as f64
    }

    /// Model counts over `bins` equal-width accuracy bins on `[0, 1]`; the
    /// last bin is closed.
    pub fn accuracy_histogram(&self, bins: usize) -> Vec<usize> {
        let mut out = vec![0; bins];
        for m in &self.models {
            let b = ((m.accuracy * bins as f64).floor() as usize).min(bins - 1);
            out[b] += 1;
        }
        out
    }
}

/// Every model classifies every alternative on its own criteria; the class
/// with the most votes wins, ties going to the lower class.
pub fn vote_classify(ensemble: &Ensemble, matrix: &DecisionMatrix) -> Result<VoteResult> {
    if ensemble.models.is_empty() {
        return Err(Error::EmptyEnsemble(""));
    }
    let k = ensemble.class_count;
    let engines = ensemble
        .models
        .iter()
        .map(|m| {
            if let Some(&j) = m.criterion_indices.iter().find(|&&j| j >= matrix.n_criteria()) {
                return Err(Error::invalid(format!(
                    "model uses criterion {j}, matrix has {}",
                    matrix.n_criteria()
                )));
            }
            Ok((Engine::new(&m.params)?, &m.criterion_indices))
        })
        .collect::<Result<Vec<_>>>()?;
    let counts: Vec<Vec<usize>> = matrix
        .rows()
        .par_iter()
        .map(|x| {
            let mut tally = vec![0usize; k];
            let mut buf = Vec::new();
            for (engine, cols) in &engines {
                buf.clear();
                buf.extend(cols.iter().map(|&j| x[j]));
                tally[engine.classify(&buf, ensemble.rule)] += 1;
            }
            tally
        })
        .collect();
    let winners = counts.iter().map(|t| plurality(t)).collect();
    Ok(VoteResult { counts, winners })
}

fn plurality(tally: &[usize]) -> usize {
    let mut best = 0;
    for (c, &n) in tally.iter().enumerate() {
        if n > tally[best] {
            best = c;
        }
    }
    best
}

/// Averages each parameter over the models that contain its criterion (λ
/// over all models), keeps fixed values from `spec`, and clips the result.
pub fn merge_parameters(ensemble: &Ensemble, spec: &ElicitationSpec) -> Result<TriBParameters> {
    if ensemble.models.is_empty() {
        return Err(Error::EmptyEnsemble(""));
    }
    let n = ensemble.criteria.len();
    if spec.n_criteria() != n || spec.n_classes() != ensemble.class_count {
        return Err(Error::invalid("spec shape does not match the ensemble"));
    }
    let n_profiles = ensemble.class_count - 1;
    let mut sums = TriBParameters {
        weights: vec![0.0; n],
        q: vec![0.0; n],
        p: vec![0.0; n],
        v: vec![0.0; n],
        profiles: vec![vec![0.0; n]; n_profiles],
        lambda: 0.0,
    };
    let mut cover = vec![0usize; n];
    for m in &ensemble.models {
        for (jj, &j) in m.criterion_indices.iter().enumerate() {
            cover[j] += 1;
            sums.weights[j] += m.params.weights[jj];
            sums.q[j] += m.params.q[jj];
            sums.p[j] += m.params.p[jj];
            sums.v[j] += m.params.v[jj];
            for h in 0..n_profiles {
                sums.profiles[h][j] += m.params.profiles[h][jj];
            }
        }
        sums.lambda += m.params.lambda;
    }
    if let Some(j) = cover.iter().position(|&c| c == 0) {
        return Err(Error::UncoveredCriterion(j));
    }
    for j in 0..n {
        let c = cover[j] as f64;
        sums.weights[j] /= c;
        sums.q[j] /= c;
        sums.p[j] /= c;
        sums.v[j] /= c;
        for row in sums.profiles.iter_mut() {
            row[j] /= c;
        }
    }
    sums.lambda /= ensemble.models.len() as f64;

    let layout = spec.layout();
    let clipped = clip_chromosome(&Chromosome(layout.encode(&sums)), spec);
    let merged = layout.decode(&clipped.0);
    let report = validate_parameters(&merged, n, ensemble.class_count);
    if !report.is_ok() {
        return Err(Error::Parameters(report));
    }
    Ok(merged)
}
