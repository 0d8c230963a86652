//! Elicit the parameters of a single model from assignment examples with
//! the genetic algorithm, keeping the indifference thresholds fixed.

use electre_tree::evolve::{ga_optimize, GaConfig};
use electre_tree::tri_b::Rule;
use electre_tree::{datasets, ElicitationSpec, ParamRef};

fn main() -> electre_tree::Result<()> {
    let (rows, _) = datasets::dataset1_sample_model();
    let full = datasets::dataset1();
    let sample = full.select(&rows, &[0, 1]);
    let labels = datasets::dataset1_classes().select(&rows);

    let spec = ElicitationSpec::builder(&sample, 4)?
        .fix_all_q(0.5)
        .fix(ParamRef::Lambda, 0.75)
        .build()?;
    println!("{} of {} genes are free", spec.free_count(), spec.genes().len());

    let config = GaConfig {
        generations: 60,
        seed: 11,
        ..GaConfig::default()
    };
    let out = ga_optimize(&sample, &labels, &spec, &config, Rule::Pessimistic)?;
    println!("accuracy {:.3} after {} generations", out.accuracy, out.generations_run);
    println!("best per generation: {:?}", out.population_best);
    println!("{:#?}", out.params);
    Ok(())
}
