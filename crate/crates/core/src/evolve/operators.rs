use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::spec::{ElicitationSpec, GeneBound};

/// Flat gene vector in the [`Layout`](crate::spec::Layout) order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Chromosome(pub Vec<f64>);

impl Chromosome {
    pub fn genes(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// SBX spread factor for a uniform draw `xi` and distribution index `mu`.
pub fn sbx_beta(xi: f64, mu: f64) -> f64 {
    let e = 1.0 / (mu + 1.0);
    if xi < 0.5 {
        (2.0 * xi).powf(e)
    } else {
        (1.0 / (2.0 - 2.0 * xi)).powf(e)
    }
}

/// Both SBX children of one gene pair for a given spread factor.
pub fn sbx_children(a: f64, b: f64, beta: f64) -> (f64, f64) {
    (
        ((1.0 - beta) * a + (1.0 + beta) * b) / 2.0,
        ((1.0 + beta) * a + (1.0 - beta) * b) / 2.0,
    )
}

/// Simulated binary crossover with an independent draw per gene. The
/// children are not clipped.
pub fn sbx_crossover<R: Rng + ?Sized>(
    parent1: &Chromosome,
    parent2: &Chromosome,
    mu: f64,
    rng: &mut R,
) -> (Chromosome, Chromosome) {
    let mut c1 = Vec::with_capacity(parent1.len());
    let mut c2 = Vec::with_capacity(parent1.len());
    for (&a, &b) in parent1.0.iter().zip(&parent2.0) {
        let beta = sbx_beta(rng.random::<f64>(), mu);
        let (x, y) = sbx_children(a, b, beta);
        c1.push(x);
        c2.push(y);
    }
    (Chromosome(c1), Chromosome(c2))
}

/// RJGGA perturbation in `(-1, 1)` for a uniform draw `xi` and distribution
/// index `eta`. Zero at `xi = 0.5`.
pub fn rjgga_rho(xi: f64, eta: f64) -> f64 {
    let e = 1.0 / (eta + 1.0);
    if xi < 0.5 {
        (2.0 * xi).powf(e) - 1.0
    } else {
        1.0 - (2.0 - 2.0 * xi).powf(e)
    }
}

/// Mutates each free gene with probability `rate` by `rho * (hi - lo)`.
/// Fixed genes are left alone; the result is not clipped.
pub fn rjgga_mutate<R: Rng + ?Sized>(
    chromosome: &Chromosome,
    rate: f64,
    eta: f64,
    ranges: &[GeneBound],
    rng: &mut R,
) -> Chromosome {
    let mut genes = chromosome.0.clone();
    for (g, bound) in genes.iter_mut().zip(ranges) {
        let phi = rng.random::<f64>();
        if phi < rate && !bound.is_fixed() {
            let xi = rng.random::<f64>();
            *g += rjgga_rho(xi, eta) * bound.width();
        }
    }
    Chromosome(genes)
}

/// Repairs a chromosome into a valid parameter set.
///
/// Fixed genes are reset, free genes clamped to their bounds, then each
/// `q <= p <= v` chain and each per-criterion profile column is made
/// non-decreasing by raising a gene to its predecessor (or lowering it to a
/// fixed successor). λ ends up in `[0.5, 1]` and at least one weight is
/// positive. Idempotent.
pub fn clip_chromosome(chromosome: &Chromosome, spec: &ElicitationSpec) -> Chromosome {
    let bounds = spec.genes();
    let layout = spec.layout();
    let mut genes = chromosome.0.clone();
    genes.resize(bounds.len(), 0.0);
    for (g, b) in genes.iter_mut().zip(bounds) {
        *g = match *b {
            GeneBound::Fixed(v) => v,
            GeneBound::Free { lo, hi } => {
                if g.is_nan() {
                    lo
                } else {
                    g.clamp(lo, hi)
                }
            }
        };
    }

    let weight_sum: f64 = (0..layout.n_criteria).map(|j| genes[layout.weight(j)]).sum();
    if weight_sum <= 0.0 {
        for j in 0..layout.n_criteria {
            let i = layout.weight(j);
            if let GeneBound::Free { hi, .. } = bounds[i] {
                genes[i] = hi;
            }
        }
    }

    for chain in layout.chains() {
        repair_chain(&mut genes, bounds, &chain);
    }

    let l = layout.lambda();
    genes[l] = genes[l].clamp(0.5, 1.0);
    Chromosome(genes)
}

fn repair_chain(genes: &mut [f64], bounds: &[GeneBound], chain: &[usize]) {
    // ceiling[i]: smallest fixed value strictly after position i
    let mut ceiling = vec![f64::INFINITY; chain.len()];
    let mut running = f64::INFINITY;
    for (pos, &i) in chain.iter().enumerate().rev() {
        ceiling[pos] = running;
        if let GeneBound::Fixed(v) = bounds[i] {
            running = running.min(v);
        }
    }
    let mut prev = f64::NEG_INFINITY;
    for (pos, &i) in chain.iter().enumerate() {
        if !bounds[i].is_fixed() {
            genes[i] = genes[i].max(prev).min(ceiling[pos]);
        }
        prev = genes[i];
    }
}
