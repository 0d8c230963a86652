use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::persist::EnsembleFile;
use crate::ensemble::{vote_classify, Ensemble};
use crate::error::{Error, Result};
use crate::matrix::DecisionMatrix;
use crate::params::TriBParameters;
use crate::tri_b::{Engine, Rule};

/// What a boundary grid is computed from: a merged model and, optionally,
/// the ensemble that votes.
#[derive(Clone, Debug)]
pub struct BoundaryModel {
    pub criteria: Vec<String>,
    pub ranges: Vec<(f64, f64)>,
    pub merged: TriBParameters,
    pub rule: Rule,
    pub ensemble: Option<Ensemble>,
}

impl BoundaryModel {
    pub fn from_file(file: &EnsembleFile) -> Result<Self> {
        Ok(Self {
            criteria: file.ensemble.criteria.clone(),
            ranges: file.observed_ranges.clone(),
            merged: file.merged.clone(),
            rule: file.ensemble.rule,
            ensemble: Some(file.active()?),
        })
    }

    /// A single model; its vote class equals its merged class.
    pub fn from_parameters(params: &TriBParameters, matrix: &DecisionMatrix, rule: Rule) -> Result<Self> {
        if params.n_criteria() != matrix.n_criteria() {
            return Err(Error::invalid(format!(
                "parameters cover {} criteria, data has {}",
                params.n_criteria(),
                matrix.n_criteria()
            )));
        }
        Ok(Self {
            criteria: matrix.criteria().to_vec(),
            ranges: (0..matrix.n_criteria()).map(|j| matrix.column_range(j)).collect(),
            merged: params.clone(),
            rule,
            ensemble: None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub x: f64,
    pub y: f64,
    pub vote_class: usize,
    pub merged_class: usize,
}

/// Classifies a `resolution × resolution` grid spanning the observed ranges
/// of criteria `x` and `y`. Other criteria sit at `fixed` or else at the
/// middle of their range. Points are ordered row by row, `x` varying
/// fastest.
pub fn boundary_grid(
    model: &BoundaryModel,
    x: &str,
    y: &str,
    resolution: usize,
    fixed: &BTreeMap<String, f64>,
) -> Result<Vec<GridPoint>> {
    if resolution < 2 {
        return Err(Error::invalid(format!(
            "grid resolution must be at least 2, got {resolution}"
        )));
    }
    let index = |name: &str| {
        model
            .criteria
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::UnknownCriterion(name.to_owned()))
    };
    let (jx, jy) = (index(x)?, index(y)?);
    if jx == jy {
        return Err(Error::invalid("the two grid axes must be different criteria"));
    }
    let mut base: Vec<f64> = model.ranges.iter().map(|&(lo, hi)| lo + (hi - lo) / 2.0).collect();
    for (name, &v) in fixed {
        base[index(name)?] = v;
    }
    let axis = |j: usize| -> Vec<f64> {
        let (lo, hi) = model.ranges[j];
        (0..resolution)
            .map(|i| lo + (hi - lo) * i as f64 / (resolution - 1) as f64)
            .collect()
    };
    let (xs, ys) = (axis(jx), axis(jy));
    let mut rows = Vec::with_capacity(resolution * resolution);
    for &yv in &ys {
        for &xv in &xs {
            let mut r = base.clone();
            r[jx] = xv;
            r[jy] = yv;
            rows.push(r);
        }
    }
    let engine = Engine::new(&model.merged)?;
    let merged: Vec<usize> = rows.iter().map(|r| engine.classify(r, model.rule)).collect();
    let votes = match &model.ensemble {
        Some(e) => {
            let ids = (0..rows.len()).map(|i| format!("p{i}")).collect();
            let grid = DecisionMatrix::new(ids, model.criteria.clone(), rows.clone())?;
            vote_classify(e, &grid)?.winners
        }
        None => merged.clone(),
    };
    Ok(rows
        .iter()
        .zip(merged.iter().zip(&votes))
        .map(|(r, (&m, &v))| GridPoint {
            x: r[jx],
            y: r[jy],
            vote_class: v,
            merged_class: m,
        })
        .collect())
}

/// CSV with header `x,y,vote_class,merged_class`; classes are indices with
/// 0 the worst.
pub fn write_grid<W: Write>(writer: W, points: &[GridPoint]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for p in points {
        w.serialize(p)?;
    }
    w.flush()?;
    Ok(())
}
