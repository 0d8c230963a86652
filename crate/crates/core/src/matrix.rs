use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Performance table: one row per alternative, one column per criterion.
///
/// Every criterion is oriented so that larger is better; minimization
/// criteria are reversed at ingestion time.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecisionMatrix {
    alternatives: Vec<String>,
    criteria: Vec<String>,
    values: Vec<Vec<f64>>,
}

impl DecisionMatrix {
    pub fn new(alternatives: Vec<String>, criteria: Vec<String>, values: Vec<Vec<f64>>) -> Result<Self> {
        if criteria.len() < 2 {
            return Err(Error::invalid(format!(
                "a decision matrix needs at least 2 criteria, got {}",
                criteria.len()
            )));
        }
        if alternatives.len() < 2 {
            return Err(Error::invalid(format!(
                "a decision matrix needs at least 2 alternatives, got {}",
                alternatives.len()
            )));
        }
        if values.len() != alternatives.len() {
            return Err(Error::invalid(format!(
                "{} rows of values for {} alternatives",
                values.len(),
                alternatives.len()
            )));
        }
        for (i, row) in values.iter().enumerate() {
            if row.len() != criteria.len() {
                return Err(Error::invalid(format!(
                    "row {} ({}) has {} entries, expected {}",
                    i,
                    alternatives[i],
                    row.len(),
                    criteria.len()
                )));
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::invalid(format!(
                    "row {} ({}), criterion {}: value is not finite",
                    i, alternatives[i], criteria[j]
                )));
            }
        }
        Ok(Self {
            alternatives,
            criteria,
            values,
        })
    }

    /// Builds a matrix with generated ids `x1..xn` and criteria `g1..gm`.
    pub fn from_rows(values: Vec<Vec<f64>>) -> Result<Self> {
        let n = values.len();
        let m = values.first().map_or(0, Vec::len);
        Self::new(
            (1..=n).map(|i| format!("x{i}")).collect(),
            (1..=m).map(|j| format!("g{j}")).collect(),
            values,
        )
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn criteria(&self) -> &[String] {
        &self.criteria
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i]
    }

    pub fn n_alternatives(&self) -> usize {
        self.alternatives.len()
    }

    pub fn n_criteria(&self) -> usize {
        self.criteria.len()
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().map(move |r| r[j])
    }

    /// `(min, max)` of a criterion column.
    pub fn column_range(&self, j: usize) -> (f64, f64) {
        self.column(j)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
    }

    /// Mean absolute difference over all pairs of distinct rows of a column.
    pub fn mean_abs_difference(&self, j: usize) -> f64 {
        let mut v: Vec<f64> = self.column(j).collect();
        v.sort_by(f64::total_cmp);
        let n = v.len() as f64;
        if v.len() < 2 {
            return 0.0;
        }
        let s: f64 = v.iter().enumerate().map(|(i, x)| (2.0 * i as f64 - n + 1.0) * x).sum();
        2.0 * s / (n * (n - 1.0))
    }

    pub fn criterion_index(&self, name: &str) -> Option<usize> {
        self.criteria.iter().position(|c| c == name)
    }

    /// Sub-matrix over a multiset of rows and a set of columns.
    ///
    /// Unlike [`DecisionMatrix::new`] this accepts a single row or column,
    /// since bootstrap samples may legitimately be that small.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> DecisionMatrix {
        DecisionMatrix {
            alternatives: rows.iter().map(|&i| self.alternatives[i].clone()).collect(),
            criteria: cols.iter().map(|&j| self.criteria[j].clone()).collect(),
            values: rows
                .iter()
                .map(|&i| cols.iter().map(|&j| self.values[i][j]).collect())
                .collect(),
        }
    }

    /// Number of pairwise distinct rows (bitwise comparison).
    pub fn distinct_rows(&self) -> usize {
        let mut keys: Vec<Vec<u64>> = self
            .values
            .iter()
            .map(|r| r.iter().map(|v| v.to_bits()).collect())
            .collect();
        keys.sort_unstable();
        keys.dedup();
        keys.len()
    }

    /// SHA-256 over the criterion names and the bit patterns of every value.
    pub fn fingerprint(&self) -> String {
        let mut hasher = Sha256::new();
        for c in &self.criteria {
            hasher.update(c.as_bytes());
            hasher.update([0u8]);
        }
        for row in &self.values {
            for v in row {
                hasher.update(v.to_bits().to_le_bytes());
            }
        }
        hex::encode(hasher.finalize())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_ragged_and_tiny_inputs() {
        assert!(DecisionMatrix::from_rows(vec![vec![1.0, 2.0], vec![1.0]]).is_err());
        assert!(DecisionMatrix::from_rows(vec![vec![1.0], vec![2.0]]).is_err());
        assert!(DecisionMatrix::from_rows(vec![vec![1.0, 2.0]]).is_err());
        assert!(DecisionMatrix::from_rows(vec![vec![1.0, f64::NAN], vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn select_and_ranges() {
        let m = DecisionMatrix::from_rows(vec![vec![1.0, 5.0], vec![3.0, 2.0], vec![2.0, 9.0]]).unwrap();
        assert_eq!(m.column_range(1), (2.0, 9.0));
        let s = m.select(&[2, 2, 0], &[1]);
        assert_eq!(s.rows(), &[vec![9.0], vec![9.0], vec![5.0]]);
        assert_eq!(s.alternatives(), &["x3", "x3", "x1"]);
        assert_eq!(m.distinct_rows(), 3);
    }

    #[test]
    fn mean_abs_difference_matches_pairwise_average() {
        let m =
            DecisionMatrix::from_rows(vec![vec![1.0, 0.0], vec![26.0, 0.0], vec![5.0, 1.0], vec![5.0, 7.0]]).unwrap();
        for j in 0..2 {
            let c: Vec<f64> = m.column(j).collect();
            let mut sum = 0.0;
            let mut pairs = 0.0;
            for a in 0..c.len() {
                for b in a + 1..c.len() {
                    sum += (c[a] - c[b]).abs();
                    pairs += 1.0;
                }
            }
            assert!((m.mean_abs_difference(j) - sum / pairs).abs() < 1e-12);
        }
    }

    #[test]
    fn fingerprint_tracks_values() {
        let a = DecisionMatrix::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let b = DecisionMatrix::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.5]]).unwrap();
        assert_eq!(a.fingerprint(), a.clone().fingerprint());
        assert_ne!(a.fingerprint(), b.fingerprint());
    }
}
