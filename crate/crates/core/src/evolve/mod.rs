//! Real-coded genetic algorithm over the free genes of an
//! [`ElicitationSpec`], maximizing assignment accuracy.

mod operators;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use operators::{clip_chromosome, rjgga_mutate, rjgga_rho, sbx_beta, sbx_children, sbx_crossover, Chromosome};

use crate::error::{Error, Result};
use crate::labels::ReferenceLabels;
use crate::matrix::DecisionMatrix;
use crate::params::TriBParameters;
use crate::spec::{ElicitationSpec, GeneBound};
use crate::tri_b::{Engine, Rule};

/// Smallest roulette weight, so a population of zero-fitness chromosomes can
/// still reproduce.
pub const SELECTION_FLOOR: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GaConfig {
    pub population_size: usize,
    pub generations: usize,
    pub elite_count: usize,
    pub mutation_rate: f64,
    /// SBX distribution index.
    pub mu: f64,
    /// Mutation distribution index.
    pub eta: f64,
    pub seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population_size: 15,
            generations: 30,
            elite_count: 1,
            mutation_rate: 0.05,
            mu: 2.0,
            eta: 1.0,
            seed: 0,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 2 {
            return Err(Error::invalid("population_size must be at least 2"));
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return Err(Error::invalid("mutation_rate must lie in [0, 1]"));
        }
        if self.elite_count >= self.population_size {
            return Err(Error::invalid("elite_count must be smaller than population_size"));
        }
        if !(self.mu >= 0.0 && self.eta >= 0.0) {
            return Err(Error::invalid("distribution indices must be non-negative"));
        }
        Ok(())
    }
}

/// Fraction of labeled alternatives whose class under `params` equals their
/// reference label.
pub fn fitness_accuracy(
    params: &TriBParameters,
    matrix: &DecisionMatrix,
    labels: &ReferenceLabels,
    rule: Rule,
) -> Result<f64> {
    if labels.len() != matrix.n_alternatives() {
        return Err(Error::invalid(format!(
            "{} labels for {} alternatives",
            labels.len(),
            matrix.n_alternatives()
        )));
    }
    let targets = labeled_rows(matrix, labels)?;
    Ok(Fitness {
        targets: &targets,
        rule,
    }
    .eval(params))
}

fn labeled_rows<'m>(matrix: &'m DecisionMatrix, labels: &ReferenceLabels) -> Result<Vec<(&'m [f64], usize)>> {
    let targets: Vec<_> = matrix
        .rows()
        .iter()
        .zip(labels.labels())
        .filter_map(|(x, l)| l.map(|l| (x.as_slice(), l)))
        .collect();
    if targets.is_empty() {
        return Err(Error::NoLabels);
    }
    Ok(targets)
}

struct Fitness<'a> {
    targets: &'a [(&'a [f64], usize)],
    rule: Rule,
}

impl Fitness<'_> {
    fn eval(&self, params: &TriBParameters) -> f64 {
        let Ok(engine) = Engine::new(params) else {
            return 0.0;
        };
        let hits = self
            .targets
            .iter()
            .filter(|(x, l)| engine.classify(x, self.rule) == *l)
            .count();
        hits as f64 / self.targets.len() as f64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaOutcome {
    pub params: TriBParameters,
    pub accuracy: f64,
    /// Best fitness in the population after initialization and after each
    /// generation.
    pub population_best: Vec<f64>,
    pub generations_run: usize,
}

struct Individual {
    chromosome: Chromosome,
    fitness: f64,
}

/// Runs the GA and returns the best parameter set ever evaluated.
///
/// The loop stops early once a chromosome reaches accuracy 1, since the
/// best-ever individual is only replaced on strict improvement.
pub fn ga_optimize(
    matrix: &DecisionMatrix,
    labels: &ReferenceLabels,
    spec: &ElicitationSpec,
    config: &GaConfig,
    rule: Rule,
) -> Result<GaOutcome> {
    config.validate()?;
    if spec.n_criteria() != matrix.n_criteria() {
        return Err(Error::invalid(format!(
            "spec covers {} criteria, matrix has {}",
            spec.n_criteria(),
            matrix.n_criteria()
        )));
    }
    if labels.k() != spec.n_classes() {
        return Err(Error::invalid(format!(
            "labels use {} classes, spec {}",
            labels.k(),
            spec.n_classes()
        )));
    }
    if labels.len() != matrix.n_alternatives() {
        return Err(Error::invalid("label count does not match the matrix"));
    }
    let targets = labeled_rows(matrix, labels)?;
    let fitness = Fitness {
        targets: &targets,
        rule,
    };
    let layout = spec.layout();
    let bounds = spec.genes();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let evaluate = |c: Chromosome| {
        let f = fitness.eval(&layout.decode(&c.0));
        Individual {
            chromosome: c,
            fitness: f,
        }
    };

    if spec.free_count() == 0 {
        let only = evaluate(clip_chromosome(&Chromosome(Vec::new()), spec));
        return Ok(GaOutcome {
            params: layout.decode(&only.chromosome.0),
            accuracy: only.fitness,
            population_best: vec![only.fitness],
            generations_run: 0,
        });
    }

    let mut population: Vec<Individual> = (0..config.population_size)
        .map(|_| evaluate(clip_chromosome(&random_chromosome(bounds, &mut rng), spec)))
        .collect();
    let mut best = best_of(&population);
    let mut best_chromosome = population[best].chromosome.clone();
    let mut best_fitness = population[best].fitness;
    let mut population_best = vec![best_fitness];
    let mut generations_run = 0;

    for _ in 0..config.generations {
        if best_fitness >= 1.0 {
            break;
        }
        population = next_generation(population, spec, config, &mut rng)
            .into_iter()
            .map(&evaluate)
            .collect();
        generations_run += 1;
        best = best_of(&population);
        population_best.push(population[best].fitness);
        if population[best].fitness > best_fitness {
            best_fitness = population[best].fitness;
            best_chromosome = population[best].chromosome.clone();
        }
    }

    Ok(GaOutcome {
        params: layout.decode(&best_chromosome.0),
        accuracy: best_fitness,
        population_best,
        generations_run,
    })
}

fn random_chromosome<R: Rng + ?Sized>(bounds: &[GeneBound], rng: &mut R) -> Chromosome {
    Chromosome(
        bounds
            .iter()
            .map(|b| match *b {
                GeneBound::Fixed(v) => v,
                GeneBound::Free { lo, hi } => lo + rng.random::<f64>() * (hi - lo),
            })
            .collect(),
    )
}

/// First index of the maximal fitness.
fn best_of(population: &[Individual]) -> usize {
    let mut best = 0;
    for (i, ind) in population.iter().enumerate() {
        if ind.fitness > population[best].fitness {
            best = i;
        }
    }
    best
}

fn next_generation<R: Rng + ?Sized>(
    population: Vec<Individual>,
    spec: &ElicitationSpec,
    config: &GaConfig,
    rng: &mut R,
) -> Vec<Chromosome> {
    let n = config.population_size;
    let mut order: Vec<usize> = (0..population.len()).collect();
    // stable: equal fitness keeps insertion order
    order.sort_by(|&a, &b| population[b].fitness.total_cmp(&population[a].fitness));
    let mut next: Vec<Chromosome> = order
        .iter()
        .take(config.elite_count)
        .map(|&i| population[i].chromosome.clone())
        .collect();

    let weights: Vec<f64> = population.iter().map(|i| i.fitness.max(SELECTION_FLOOR)).collect();
    let roulette = WeightedIndex::new(&weights).expect("weights are positive");
    while next.len() < n {
        let a = &population[roulette.sample(rng)].chromosome;
        let b = &population[roulette.sample(rng)].chromosome;
        let (c1, c2) = sbx_crossover(a, b, config.mu, rng);
        for child in [c1, c2] {
            if next.len() == n {
                break;
            }
            let child = clip_chromosome(&child, spec);
            let child = rjgga_mutate(&child, config.mutation_rate, config.eta, spec.genes(), rng);
            next.push(clip_chromosome(&child, spec));
        }
    }
    next
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets;
    use crate::labels::LabelSource;
    use crate::params::validate_parameters;

    #[test]
    fn sampled_reference_model_is_perfect_on_its_rows() {
        let m = datasets::dataset1();
        let (rows, params) = datasets::dataset1_sample_model();
        let sub = m.select(&rows, &[0, 1]);
        let labels = datasets::dataset1_classes().select(&rows);
        assert_eq!(
            fitness_accuracy(&params, &sub, &labels, Rule::PessimisticStrict).unwrap(),
            1.0
        );
        // x4 = (1, 4) and x8 = (2, 4) are indifferent to b_1 and climb under plain S
        assert_eq!(
            fitness_accuracy(&params, &sub, &labels, Rule::Pessimistic).unwrap(),
            14.0 / 16.0
        );
    }

    #[test]
    fn merged_reference_accuracy() {
        let m = datasets::dataset1();
        let params = datasets::dataset1_merged_reference();
        let labels = datasets::dataset1_classes();
        assert_eq!(
            fitness_accuracy(&params, &m, &labels, Rule::PessimisticStrict).unwrap(),
            58.0 / 64.0
        );
        assert_eq!(
            fitness_accuracy(&params, &m, &labels, Rule::Pessimistic).unwrap(),
            44.0 / 64.0
        );
    }

    #[test]
    fn accuracy_one_and_zero() {
        let m = DecisionMatrix::from_rows(vec![vec![0.0, 0.0], vec![10.0, 10.0]]).unwrap();
        let params = TriBParameters {
            weights: vec![0.5, 0.5],
            q: vec![0.0, 0.0],
            p: vec![1.0, 1.0],
            v: vec![2.0, 2.0],
            profiles: vec![vec![5.0, 5.0]],
            lambda: 0.75,
        };
        let right = ReferenceLabels::examples(vec![0, 1], 2).unwrap();
        let wrong = ReferenceLabels::examples(vec![1, 0], 2).unwrap();
        assert_eq!(fitness_accuracy(&params, &m, &right, Rule::Pessimistic).unwrap(), 1.0);
        assert_eq!(fitness_accuracy(&params, &m, &wrong, Rule::Pessimistic).unwrap(), 0.0);
        let none = ReferenceLabels::new(vec![None, None], 2, LabelSource::AssignmentExamples).unwrap();
        assert!(matches!(
            fitness_accuracy(&params, &m, &none, Rule::Pessimistic),
            Err(Error::NoLabels)
        ));
    }

    #[test]
    fn fully_fixed_spec_returns_its_point() {
        let m = datasets::dataset1();
        let params = datasets::dataset1_merged_reference();
        let spec = ElicitationSpec::fixed(&params).unwrap();
        let labels = datasets::dataset1_classes();
        let out = ga_optimize(&m, &labels, &spec, &GaConfig::default(), Rule::Pessimistic).unwrap();
        assert_eq!(out.params, params);
        assert_eq!(
            out.accuracy,
            fitness_accuracy(&params, &m, &labels, Rule::Pessimistic).unwrap()
        );
    }

    #[test]
    fn ga_is_deterministic_and_elitist() {
        let m = datasets::dataset1();
        let labels = datasets::dataset1_classes();
        let spec = ElicitationSpec::free(&m, 4).unwrap();
        let cfg = GaConfig {
            seed: 5,
            ..GaConfig::default()
        };
        let a = ga_optimize(&m, &labels, &spec, &cfg, Rule::Pessimistic).unwrap();
        let b = ga_optimize(&m, &labels, &spec, &cfg, Rule::Pessimistic).unwrap();
        assert_eq!(a, b);
        for w in a.population_best.windows(2) {
            assert!(w[1] >= w[0]);
        }
        assert!(validate_parameters(&a.params, 2, 4).is_ok());
        assert!(a.accuracy > 0.5, "accuracy {}", a.accuracy);
    }

    #[test]
    fn config_validation() {
        let bad = GaConfig {
            elite_count: 15,
            ..GaConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = GaConfig {
            population_size: 1,
            elite_count: 0,
            ..GaConfig::default()
        };
        assert!(bad.validate().is_err());
    }
}
