//! Property bodies driven by a seed, shared by the proptest suite and the
//! acceptance run.

use electre_tree::ensemble::{vote_classify, Ensemble, EnsembleConfig, ModelRecord};
use electre_tree::evolve::{clip_chromosome, ga_optimize, rjgga_mutate, sbx_crossover, Chromosome, GaConfig};
use electre_tree::tri_b::{global_concordance, partial_concordance, Engine, Rule};
use electre_tree::{validate_parameters, ElicitationSpec, GeneBound, ReferenceLabels};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{grid, oracle, random_matrix, random_params};

pub type Outcome = Result<(), TestCaseError>;

const RULES: [Rule; 4] = [
    Rule::Pessimistic,
    Rule::Optimistic,
    Rule::PessimisticStrict,
    Rule::OptimisticStrict,
];

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Engine against the oracle on one random instance: ≤ 6 alternatives,
/// 2-3 criteria, 1-2 profiles.
pub fn matches_oracle(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let n = r.random_range(2..=3);
    let k = r.random_range(2..=3);
    let m = r.random_range(2..=6);
    let t = random_params(&mut r, n, k);
    let x = random_matrix(&mut r, m, n);
    let e = Engine::new(&t).map_err(|e| TestCaseError::fail(e.to_string()))?;
    for row in x.rows() {
        for (h, b) in t.profiles.iter().enumerate() {
            prop_assert!((e.sigma_x_b(row, h) - oracle::sigma(&t, row, b)).abs() <= 1e-12);
            prop_assert!((e.sigma_b_x(row, h) - oracle::sigma(&t, b, row)).abs() <= 1e-12);
        }
        prop_assert_eq!(e.classify(row, Rule::Pessimistic), oracle::pessimistic(&t, row));
        prop_assert_eq!(e.classify(row, Rule::Optimistic), oracle::optimistic(&t, row));
        prop_assert_eq!(
            e.classify(row, Rule::PessimisticStrict),
            oracle::pessimistic_strict(&t, row)
        );
        prop_assert_eq!(
            e.classify(row, Rule::OptimisticStrict),
            oracle::optimistic_strict(&t, row)
        );
    }
    Ok(())
}

/// σ never exceeds the global concordance it discounts.
pub fn sigma_below_concordance(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let n = r.random_range(1..=5);
    let t = random_params(&mut r, n, 2);
    let e = Engine::new(&t).unwrap();
    let x: Vec<f64> = (0..n).map(|_| r.random_range(-2.0..12.0)).collect();
    let b = &t.profiles[0];
    let partials: Vec<f64> = (0..n)
        .map(|j| partial_concordance(b[j] - x[j], t.q[j], t.p[j]))
        .collect();
    let c = global_concordance(&partials, &t.weights).unwrap();
    let s = e.sigma_x_b(&x, 0);
    prop_assert!(s <= c, "σ = {} > C = {}", s, c);
    prop_assert!(s >= 0.0);
    Ok(())
}

/// Raising one evaluation never lowers the class, under every rule.
pub fn class_monotone_in_each_evaluation(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let n = r.random_range(1..=4);
    let k = r.random_range(2..=5);
    let t = random_params(&mut r, n, k);
    let e = Engine::new(&t).unwrap();
    let x: Vec<f64> = (0..n).map(|_| grid(&mut r, -1.0, 11.0, 0.25)).collect();
    let j = r.random_range(0..n);
    let mut y = x.clone();
    y[j] += grid(&mut r, 0.0, 6.0, 0.25);
    for rule in RULES {
        let (cx, cy) = (e.classify(&x, rule), e.classify(&y, rule));
        prop_assert!(cy >= cx, "{}: {:?} -> {}, {:?} -> {}", rule, x, cx, y, cy);
    }
    Ok(())
}

/// A random spec: default bounds with a random subset of genes fixed to a
/// valid parameter set.
fn random_spec(r: &mut ChaCha8Rng) -> Option<ElicitationSpec> {
    let n = r.random_range(2..=4);
    let k = r.random_range(2..=4);
    let m = r.random_range(3..=8);
    let x = random_matrix(r, m, n);
    let t = random_params(r, n, k);
    let layout = electre_tree::spec::Layout::new(n, k);
    let values = layout.encode(&t);
    let defaults = ElicitationSpec::free(&x, k).ok()?;
    let fix_share = r.random_range(0.0..0.8);
    let genes = defaults
        .genes()
        .iter()
        .zip(values)
        .map(|(&b, v)| {
            if r.random_bool(fix_share) {
                GeneBound::Fixed(v)
            } else {
                b
            }
        })
        .collect();
    ElicitationSpec::new(n, k, genes).ok()
}

fn wild_gene(r: &mut ChaCha8Rng, b: GeneBound) -> f64 {
    match r.random_range(0..20) {
        0 => f64::NAN,
        1 => -1e9,
        2 => 1e9,
        _ => {
            let (lo, hi) = (b.lo().min(0.0), if b.hi().is_finite() { b.hi() } else { 10.0 });
            let w = (hi - lo).max(1.0);
            r.random_range(lo - w..hi + w)
        }
    }
}

/// clip∘clip = clip, and every clipped chromosome decodes to valid
/// parameters that keep the fixed genes.
pub fn clip_idempotent_and_feasible(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let Some(spec) = random_spec(&mut r) else {
        return Err(TestCaseError::reject("infeasible spec"));
    };
    let raw = Chromosome(spec.genes().iter().map(|&b| wild_gene(&mut r, b)).collect());
    let once = clip_chromosome(&raw, &spec);
    let twice = clip_chromosome(&once, &spec);
    let bits = |c: &Chromosome| c.genes().iter().map(|g| g.to_bits()).collect::<Vec<_>>();
    prop_assert_eq!(bits(&once), bits(&twice));
    let params = spec.layout().decode(once.genes());
    let report = validate_parameters(&params, spec.n_criteria(), spec.n_classes());
    prop_assert!(report.is_ok(), "{:?}", report.messages());
    for (g, b) in once.genes().iter().zip(spec.genes()) {
        if let GeneBound::Fixed(v) = *b {
            prop_assert_eq!(g.to_bits(), v.to_bits());
        }
    }
    Ok(())
}

/// SBX keeps each gene pair's mean, up to rounding.
pub fn sbx_preserves_means(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let len = r.random_range(1..=12);
    let a = Chromosome((0..len).map(|_| r.random_range(-1e3..1e3)).collect());
    let b = Chromosome((0..len).map(|_| r.random_range(-1e3..1e3)).collect());
    let mu = r.random_range(0.0..20.0);
    let (c1, c2) = sbx_crossover(&a, &b, mu, &mut r);
    for i in 0..len {
        let (x, y, u, v) = (a.genes()[i], b.genes()[i], c1.genes()[i], c2.genes()[i]);
        let scale = x.abs() + y.abs() + u.abs() + v.abs();
        prop_assert!(
            ((u + v) - (x + y)).abs() <= 4.0 * f64::EPSILON * scale,
            "gene {}: parents {} {} children {} {}",
            i,
            x,
            y,
            u,
            v
        );
    }
    Ok(())
}

/// A mutation moves a free gene by less than its interval width and never
/// touches a fixed gene.
pub fn mutation_step_bounded(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let len = r.random_range(1..=12);
    let ranges: Vec<GeneBound> = (0..len)
        .map(|_| {
            if r.random_bool(0.3) {
                GeneBound::Fixed(r.random_range(-5.0..5.0))
            } else {
                let lo = r.random_range(-5.0..5.0);
                GeneBound::Free {
                    lo,
                    hi: lo + r.random_range(0.0..10.0),
                }
            }
        })
        .collect();
    let c = Chromosome(ranges.iter().map(|b| r.random_range(b.lo()..=b.hi())).collect());
    let eta = r.random_range(0.0..10.0);
    let m = rjgga_mutate(&c, 1.0, eta, &ranges, &mut r);
    for ((before, after), b) in c.genes().iter().zip(m.genes()).zip(&ranges) {
        match *b {
            GeneBound::Fixed(_) => prop_assert_eq!(before.to_bits(), after.to_bits()),
            GeneBound::Free { .. } => prop_assert!((after - before).abs() <= b.width()),
        }
    }
    Ok(())
}

/// With at least one elite, the best fitness per generation never drops.
pub fn elitism_keeps_best(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let n = r.random_range(2..=3);
    let k = r.random_range(2..=3);
    let m = r.random_range(4..=8);
    let x = random_matrix(&mut r, m, n);
    let labels = ReferenceLabels::examples((0..m).map(|_| r.random_range(0..k)).collect(), k).unwrap();
    let spec = ElicitationSpec::free(&x, k).unwrap();
    let config = GaConfig {
        population_size: r.random_range(3..=8),
        generations: 6,
        elite_count: r.random_range(1..=2),
        seed: r.random(),
        ..GaConfig::default()
    };
    let out = ga_optimize(&x, &labels, &spec, &config, Rule::Pessimistic).unwrap();
    for w in out.population_best.windows(2) {
        prop_assert!(w[1] >= w[0], "{:?}", out.population_best);
    }
    Ok(())
}

/// Vote counts add up to the number of models and the winner is the
/// lowest class among the most voted.
pub fn votes_sum_to_models(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let n = r.random_range(2..=4);
    let k = r.random_range(2..=4);
    let m = r.random_range(2..=6);
    let x = random_matrix(&mut r, m, n);
    let n_models = r.random_range(1..=8);
    let models = (0..n_models)
        .map(|_| {
            let mut cols: Vec<usize> = (0..n).filter(|_| r.random_bool(0.6)).collect();
            if cols.len() < 2 {
                cols = vec![0, n - 1];
            }
            ModelRecord {
                alternative_indices: vec![],
                params: random_params(&mut r, cols.len(), k),
                criterion_indices: cols,
                accuracy: 1.0,
            }
        })
        .collect();
    let ensemble = Ensemble {
        models,
        class_count: k,
        rule: RULES[r.random_range(0..4)],
        criteria: x.criteria().to_vec(),
        fingerprint: x.fingerprint(),
        config: EnsembleConfig::default(),
    };
    let v = vote_classify(&ensemble, &x).unwrap();
    for (counts, &w) in v.counts.iter().zip(&v.winners) {
        prop_assert_eq!(counts.iter().sum::<usize>(), n_models);
        let top = *counts.iter().max().unwrap();
        prop_assert_eq!(w, counts.iter().position(|&c| c == top).unwrap());
    }
    Ok(())
}

pub type Property = fn(u64) -> Outcome;

pub const PROPERTIES: [(&str, Property); 8] = [
    ("engine matches oracle", matches_oracle),
    ("sigma <= concordance", sigma_below_concordance),
    ("class monotone in each evaluation", class_monotone_in_each_evaluation),
    ("clip idempotent and feasible", clip_idempotent_and_feasible),
    ("sbx preserves gene means", sbx_preserves_means),
    ("mutation step bounded by gene range", mutation_step_bounded),
    ("elitism keeps best fitness", elitism_keeps_best),
    ("votes sum to model count", votes_sum_to_models),
];

/// Runs `prop` on `cases` seeds from a fixed generator.
pub fn check(prop: Property, cases: u32) -> Result<(), String> {
    let config = Config {
        cases,
        max_global_rejects: cases * 4,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&any::<u64>(), prop).map_err(|e| e.to_string())
}
