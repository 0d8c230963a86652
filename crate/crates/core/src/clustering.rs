//! K-means++ seeding, Lloyd iteration and the ordering of clusters into
//! ranked classes.

use std::cmp::Ordering;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labels::{LabelSource, ReferenceLabels};
use crate::matrix::DecisionMatrix;

pub const MAX_LLOYD_PASSES: usize = 300;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Clustering {
    pub centroids: Vec<Vec<f64>>,
    pub membership: Vec<usize>,
    /// Within-cluster sum of squared distances after each pass.
    pub sse_history: Vec<f64>,
    pub passes: usize,
}

impl Clustering {
    pub fn k(&self) -> usize {
        self.centroids.len()
    }

    pub fn sse(&self) -> f64 {
        self.sse_history.last().copied().unwrap_or(f64::NAN)
    }
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Index of the nearest centroid; ties go to the lowest index.
fn nearest(x: &[f64], centroids: &[Vec<f64>]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (c, centroid) in centroids.iter().enumerate() {
        let d = sq_dist(x, centroid);
        if d < best.1 {
            best = (c, d);
        }
    }
    best
}

/// K-means++ seeding: the first centroid is a uniformly drawn row, each next
/// one is drawn with probability proportional to the squared distance to the
/// nearest centroid chosen so far.
pub fn kmeanspp_seed<R: Rng + ?Sized>(matrix: &DecisionMatrix, k: usize, rng: &mut R) -> Result<Vec<Vec<f64>>> {
    if k == 0 {
        return Err(Error::invalid("cluster count must be positive"));
    }
    let distinct = matrix.distinct_rows();
    if k > distinct {
        return Err(Error::NotEnoughDistinct { requested: k, distinct });
    }
    let rows = matrix.rows();
    let mut centroids = vec![rows[rng.random_range(0..rows.len())].clone()];
    let mut d2: Vec<f64> = rows.iter().map(|x| sq_dist(x, &centroids[0])).collect();
    while centroids.len() < k {
        // k <= distinct rows keeps at least one weight positive
        let pick = WeightedIndex::new(&d2)
            .map_err(|e| Error::invalid(format!("k-means++ weights: {e}")))?
            .sample(rng);
        let c = rows[pick].clone();
        for (d, x) in d2.iter_mut().zip(rows) {
            *d = d.min(sq_dist(x, &c));
        }
        centroids.push(c);
    }
    Ok(centroids)
}

fn total_sse(rows: &[Vec<f64>], centroids: &[Vec<f64>], membership: &[usize]) -> f64 {
    rows.iter()
        .zip(membership)
        .map(|(x, &c)| sq_dist(x, &centroids[c]))
        .sum()
}

fn recompute(rows: &[Vec<f64>], membership: &[usize], k: usize, dims: usize) -> (Vec<Vec<f64>>, Vec<usize>) {
    let mut sums = vec![vec![0.0; dims]; k];
    let mut counts = vec![0usize; k];
    for (x, &c) in rows.iter().zip(membership) {
        counts[c] += 1;
        for (s, v) in sums[c].iter_mut().zip(x) {
            *s += v;
        }
    }
    for (s, &n) in sums.iter_mut().zip(&counts) {
        if n > 0 {
            s.iter_mut().for_each(|v| *v /= n as f64);
        }
    }
    (sums, counts)
}

/// Lloyd iteration from the given seeds until no assignment changes during a
/// full pass (or [`MAX_LLOYD_PASSES`]).
///
/// A cluster that loses all its members is re-seeded with the observation
/// farthest from its current centroid.
pub fn kmeans_run(matrix: &DecisionMatrix, seeds: &[Vec<f64>]) -> Result<Clustering> {
    let k = seeds.len();
    if k == 0 {
        return Err(Error::invalid("no seed centroids"));
    }
    if k > matrix.n_alternatives() {
        return Err(Error::NotEnoughDistinct {
            requested: k,
            distinct: matrix.distinct_rows(),
        });
    }
    let dims = matrix.n_criteria();
    if seeds.iter().any(|s| s.len() != dims) {
        return Err(Error::invalid("seed dimension does not match the matrix"));
    }
    let rows = matrix.rows();
    let mut centroids = seeds.to_vec();
    let mut membership: Vec<usize> = rows.iter().map(|x| nearest(x, &centroids).0).collect();
    let mut sse_history = Vec::new();
    let mut passes = 0;
    loop {
        passes += 1;
        let (mut next, mut counts) = recompute(rows, &membership, k, dims);
        while let Some(empty) = counts.iter().position(|&n| n == 0) {
            let far = (0..rows.len())
                .filter(|&a| counts[membership[a]] > 1)
                .max_by(|&a, &b| {
                    let da = sq_dist(&rows[a], &next[membership[a]]);
                    let db = sq_dist(&rows[b], &next[membership[b]]);
                    da.partial_cmp(&db).unwrap_or(Ordering::Equal).then(b.cmp(&a))
                })
                .expect("k <= rows leaves a cluster with two members");
            membership[far] = empty;
            let recomputed = recompute(rows, &membership, k, dims);
            next = recomputed.0;
            counts = recomputed.1;
        }
        centroids = next;
        sse_history.push(total_sse(rows, &centroids, &membership));

        let reassigned: Vec<usize> = rows.iter().map(|x| nearest(x, &centroids).0).collect();
        // keep the current cluster on exact distance ties so the loop settles
        let reassigned: Vec<usize> = reassigned
            .into_iter()
            .zip(rows)
            .zip(&membership)
            .map(|((c, x), &old)| {
                if sq_dist(x, &centroids[old]) <= sq_dist(x, &centroids[c]) {
                    old
                } else {
                    c
                }
            })
            .collect();
        if reassigned == membership || passes >= MAX_LLOYD_PASSES {
            break;
        }
        membership = reassigned;
    }
    Ok(Clustering {
        centroids,
        membership,
        sse_history,
        passes,
    })
}

/// Number of independent seedings per [`cluster`] call; the run with the
/// lowest within-cluster error wins.
pub const DEFAULT_RESTARTS: usize = 10;

/// Seeds and runs k-means `restarts` times from one seed and keeps the
/// lowest-error clustering.
pub fn cluster(matrix: &DecisionMatrix, k: usize, seed: u64, restarts: usize) -> Result<Clustering> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<Clustering> = None;
    for _ in 0..restarts.max(1) {
        let seeds = kmeanspp_seed(matrix, k, &mut rng)?;
        let run = kmeans_run(matrix, &seeds)?;
        if best.as_ref().is_none_or(|b| run.sse() < b.sse()) {
            best = Some(run);
        }
    }
    Ok(best.expect("at least one restart"))
}

/// Ranks clusters by the Euclidean norm of their centroid: the farthest from
/// the origin becomes the best class (`k - 1`), the nearest the worst (`0`).
/// Equal norms fall back to lexicographic centroid order.
pub fn cluster_ranks(clustering: &Clustering) -> Vec<usize> {
    let norm = |c: &Vec<f64>| c.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut order: Vec<usize> = (0..clustering.k()).collect();
    order.sort_by(|&a, &b| {
        let (ca, cb) = (&clustering.centroids[a], &clustering.centroids[b]);
        norm(ca)
            .partial_cmp(&norm(cb))
            .unwrap_or(Ordering::Equal)
            .then_with(|| ca.partial_cmp(cb).unwrap_or(Ordering::Equal))
    });
    let mut rank = vec![0; clustering.k()];
    for (r, &c) in order.iter().enumerate() {
        rank[c] = r;
    }
    rank
}

pub fn order_clusters(clustering: &Clustering) -> Result<ReferenceLabels> {
    let rank = cluster_ranks(clustering);
    ReferenceLabels::new(
        clustering.membership.iter().map(|&c| Some(rank[c])).collect(),
        clustering.k(),
        LabelSource::Clusters,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets;

    #[test]
    fn single_cluster_seed_is_a_row() {
        let m = datasets::dataset1();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = kmeanspp_seed(&m, 1, &mut rng).unwrap();
        assert!(m.rows().contains(&c[0]));
    }

    #[test]
    fn too_many_clusters() {
        let m = DecisionMatrix::from_rows(vec![vec![1.0, 1.0], vec![1.0, 1.0], vec![2.0, 2.0]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            kmeanspp_seed(&m, 3, &mut rng),
            Err(Error::NotEnoughDistinct {
                requested: 3,
                distinct: 2
            })
        ));
        assert!(kmeanspp_seed(&m, 2, &mut rng).is_ok());
    }

    #[test]
    fn two_points_two_clusters() {
        let m = DecisionMatrix::from_rows(vec![vec![0.0, 0.0], vec![3.0, 4.0]]).unwrap();
        let c = cluster(&m, 2, 1, 1).unwrap();
        let mut cents = c.centroids.clone();
        cents.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(cents, vec![vec![0.0, 0.0], vec![3.0, 4.0]]);
        assert_ne!(c.membership[0], c.membership[1]);
    }

    #[test]
    fn fixed_point_seeds_converge_in_one_pass() {
        let m = DecisionMatrix::from_rows(vec![
            vec![0.0, 0.0],
            vec![0.0, 2.0],
            vec![100.0, 100.0],
            vec![100.0, 102.0],
        ])
        .unwrap();
        let c = kmeans_run(&m, &[vec![0.0, 1.0], vec![100.0, 101.0]]).unwrap();
        assert_eq!(c.passes, 1);
        assert_eq!(c.membership, vec![0, 0, 1, 1]);
    }

    #[test]
    fn empty_cluster_is_reseeded() {
        let m = DecisionMatrix::from_rows(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![10.0, 0.0]]).unwrap();
        // second seed far away from everything, loses all members immediately
        let c = kmeans_run(&m, &[vec![0.0, 0.0], vec![1000.0, 1000.0]]).unwrap();
        let mut sizes = [0; 2];
        c.membership.iter().for_each(|&i| sizes[i] += 1);
        assert!(sizes.iter().all(|&n| n > 0));
        assert!(c.sse() <= 0.5 + 1e-12);
    }

    #[test]
    fn ordering_by_norm() {
        let c = Clustering {
            centroids: vec![vec![3.0, 4.0], vec![6.0, 8.0]],
            membership: vec![0, 1, 1],
            sse_history: vec![0.0],
            passes: 1,
        };
        let l = order_clusters(&c).unwrap();
        assert_eq!(l.labels(), &[Some(0), Some(1), Some(1)]);
        let single = Clustering {
            centroids: vec![vec![1.0, 1.0]],
            membership: vec![0, 0],
            sse_history: vec![0.0],
            passes: 1,
        };
        assert_eq!(order_clusters(&single).unwrap().labels(), &[Some(0), Some(0)]);
    }

    #[test]
    fn equal_norms_break_lexicographically() {
        let c = Clustering {
            centroids: vec![vec![4.0, 3.0], vec![3.0, 4.0]],
            membership: vec![0, 1],
            sse_history: vec![0.0],
            passes: 1,
        };
        assert_eq!(cluster_ranks(&c), vec![1, 0]);
    }

    #[test]
    fn dataset1_centroids_and_order() {
        let m = datasets::dataset1();
        let c = cluster(&m, 4, 7, DEFAULT_RESTARTS).unwrap();
        let rank = cluster_ranks(&c);
        let mut by_rank = vec![vec![]; 4];
        for (ci, &r) in rank.iter().enumerate() {
            by_rank[r] = c.centroids[ci].clone();
        }
        assert_eq!(
            by_rank,
            vec![vec![2.5, 2.5], vec![17.5, 9.5], vec![24.5, 9.5], vec![24.5, 16.5]]
        );
        for w in c.sse_history.windows(2) {
            assert!(w[1] <= w[0] + 1e-9);
        }
    }

    #[test]
    fn seeding_is_reproducible() {
        let m = datasets::dataset1();
        let a = kmeanspp_seed(&m, 4, &mut ChaCha8Rng::seed_from_u64(11)).unwrap();
        let b = kmeanspp_seed(&m, 4, &mut ChaCha8Rng::seed_from_u64(11)).unwrap();
        assert_eq!(a, b);
    }
}
