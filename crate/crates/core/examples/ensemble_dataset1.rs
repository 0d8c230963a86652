//! Build an ensemble of bootstrap models on the two-criteria data set and
//! compare voting with the merged model.

use electre_tree::ensemble::{build_ensemble, merge_parameters, vote_classify, EnsembleConfig, Reference};
use electre_tree::evolve::fitness_accuracy;
use electre_tree::{datasets, ElicitationSpec};

fn main() -> electre_tree::Result<()> {
    let matrix = datasets::dataset1();
    let truth = datasets::dataset1_classes();
    let spec = ElicitationSpec::free(&matrix, 4)?;
    let config = EnsembleConfig {
        n_models: 1000,
        sample_fraction: 0.25,
        seed: 2024,
        ..EnsembleConfig::default()
    };
    let ensemble = build_ensemble(&matrix, &Reference::Clusters { k: 4 }, &spec, &config)?;
    println!(
        "{} models, mean accuracy {:.3}, {:.1}% perfect",
        ensemble.models.len(),
        ensemble.mean_accuracy(),
        100.0 * ensemble.perfect_share()
    );
    println!("histogram: {:?}", ensemble.accuracy_histogram(10));

    let votes = vote_classify(&ensemble, &matrix)?;
    let merged = merge_parameters(&ensemble, &spec)?;
    println!("vote accuracy   {:.4}", truth.accuracy(&votes.winners)?);
    println!(
        "merged accuracy {:.4}",
        fitness_accuracy(&merged, &matrix, &truth, config.rule)?
    );
    println!("merged λ {:.3}, weights {:.3?}", merged.lambda, merged.weights);
    Ok(())
}
