//! Ordered k-means++ clusters as surrogate class labels.

use electre_tree::clustering::{cluster, cluster_ranks, order_clusters, DEFAULT_RESTARTS};
use electre_tree::datasets;

fn main() -> electre_tree::Result<()> {
    let matrix = datasets::dataset1();
    let c = cluster(&matrix, 4, 42, DEFAULT_RESTARTS)?;
    let ranks = cluster_ranks(&c);
    println!("converged after {} Lloyd passes, SSE {:.2}", c.passes, c.sse());
    for (i, centroid) in c.centroids.iter().enumerate() {
        println!("cluster {i}: centroid {centroid:?}, class rank {}", ranks[i]);
    }
    let labels = order_clusters(&c)?;
    let truth = datasets::dataset1_classes();
    let predicted: Vec<usize> = labels.labels().iter().map(|l| l.unwrap()).collect();
    println!(
        "agreement with the generating blocks: {:.3}",
        truth.accuracy(&predicted)?
    );
    Ok(())
}
