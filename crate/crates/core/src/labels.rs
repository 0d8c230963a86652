use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LabelSource {
    Clusters,
    AssignmentExamples,
}

/// Ordered class labels per alternative: `0` is the worst class, `k - 1` the
/// best. Alternatives without an assignment example carry `None` and do not
/// count towards accuracy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReferenceLabels {
    labels: Vec<Option<usize>>,
    k: usize,
    source: LabelSource,
}

impl ReferenceLabels {
    pub fn new(labels: Vec<Option<usize>>, k: usize, source: LabelSource) -> Result<Self> {
        if k < 2 && source == LabelSource::AssignmentExamples {
            return Err(Error::invalid(format!("need at least 2 classes, got {k}")));
        }
        if k == 0 {
            return Err(Error::invalid("class count must be positive"));
        }
        if let Some((i, l)) = labels
            .iter()
            .enumerate()
            .find_map(|(i, l)| l.filter(|&c| c >= k).map(|c| (i, c)))
        {
            return Err(Error::invalid(format!("label {l} of alternative {i} outside 0..{k}")));
        }
        Ok(Self { labels, k, source })
    }

    /// Fully labeled assignment examples.
    pub fn examples(labels: Vec<usize>, k: usize) -> Result<Self> {
        Self::new(
            labels.into_iter().map(Some).collect(),
            k,
            LabelSource::AssignmentExamples,
        )
    }

    pub fn labels(&self) -> &[Option<usize>] {
        &self.labels
    }

    pub fn get(&self, i: usize) -> Option<usize> {
        self.labels[i]
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn source(&self) -> LabelSource {
        self.source
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labeled_count(&self) -> usize {
        self.labels.iter().filter(|l| l.is_some()).count()
    }

    /// Labels of a multiset of rows.
    pub fn select(&self, rows: &[usize]) -> ReferenceLabels {
        ReferenceLabels {
            labels: rows.iter().map(|&i| self.labels[i]).collect(),
            k: self.k,
            source: self.source,
        }
    }

    /// Fraction of labeled alternatives whose predicted class matches.
    pub fn accuracy(&self, predicted: &[usize]) -> Result<f64> {
        let mut hits = 0usize;
        let mut total = 0usize;
        for (l, &c) in self.labels.iter().zip(predicted) {
            if let Some(l) = l {
                total += 1;
                hits += usize::from(*l == c);
            }
        }
        if total == 0 {
            return Err(Error::NoLabels);
        }
        Ok(hits as f64 / total as f64)
    }
}
