#![allow(dead_code)]

pub mod oracle;
pub mod props;

use electre_tree::{DecisionMatrix, TriBParameters};
use rand::Rng;

/// Multiples of `step` in `[lo, hi]`; coarse grids make ties and threshold
/// boundaries common.
pub fn grid<R: Rng>(rng: &mut R, lo: f64, hi: f64, step: f64) -> f64 {
    let n = ((hi - lo) / step).round() as i64;
    lo + step * rng.random_range(0..=n) as f64
}

/// A valid parameter set with values on a 0.5 grid over `[0, 10]`.
pub fn random_params<R: Rng>(rng: &mut R, n: usize, k: usize) -> TriBParameters {
    let mut weights: Vec<f64> = (0..n).map(|_| grid(rng, 0.0, 1.0, 0.05)).collect();
    if weights.iter().all(|&w| w == 0.0) {
        weights[0] = 0.5;
    }
    let q: Vec<f64> = (0..n).map(|_| grid(rng, 0.0, 3.0, 0.5)).collect();
    let p: Vec<f64> = q.iter().map(|&q| q + grid(rng, 0.0, 3.0, 0.5)).collect();
    let v: Vec<f64> = p
        .iter()
        .map(|&p| {
            if rng.random_bool(0.25) {
                f64::INFINITY
            } else {
                p + grid(rng, 0.0, 4.0, 0.5)
            }
        })
        .collect();
    let mut profiles = vec![vec![0.0; n]; k - 1];
    for j in 0..n {
        let mut col: Vec<f64> = (0..k - 1).map(|_| grid(rng, 0.0, 10.0, 0.5)).collect();
        col.sort_by(f64::total_cmp);
        for (row, b) in profiles.iter_mut().zip(col) {
            row[j] = b;
        }
    }
    TriBParameters {
        weights,
        q,
        p,
        v,
        profiles,
        lambda: grid(rng, 0.5, 1.0, 0.05),
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, m: usize, n: usize) -> DecisionMatrix {
    let rows = (0..m)
        .map(|_| (0..n).map(|_| grid(rng, 0.0, 10.0, 0.5)).collect())
        .collect();
    DecisionMatrix::from_rows(rows).expect("at least 2 x 2")
}
