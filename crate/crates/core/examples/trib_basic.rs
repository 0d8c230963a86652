//! Sort a handful of alternatives with fully specified ELECTRE Tri-B
//! parameters and show the credibility behind each decision.

use electre_tree::tri_b::{assign, Engine, Rule};
use electre_tree::{validate_parameters, DecisionMatrix, TriBParameters};

fn main() -> electre_tree::Result<()> {
    let matrix = DecisionMatrix::new(
        vec!["cheap".into(), "balanced".into(), "premium".into()],
        vec!["quality".into(), "service".into(), "price_score".into()],
        vec![vec![3.0, 4.0, 9.0], vec![6.0, 6.0, 6.0], vec![9.0, 8.0, 2.0]],
    )?;
    // three classes need two profiles, worst first
    let params = TriBParameters {
        weights: vec![0.4, 0.3, 0.3],
        q: vec![0.5, 0.5, 0.5],
        p: vec![1.5, 1.5, 1.5],
        v: vec![5.0, 5.0, f64::INFINITY],
        profiles: vec![vec![4.0, 4.0, 4.0], vec![7.0, 7.0, 7.0]],
        lambda: 0.7,
    };
    let report = validate_parameters(&params, 3, 3);
    assert!(report.is_ok(), "{:?}", report.messages());

    let engine = Engine::new(&params)?;
    for (id, x) in matrix.alternatives().iter().zip(matrix.rows()) {
        for h in 0..params.profiles.len() {
            let pair = engine.credibility_pair(x, h);
            println!(
                "{id:>9} vs b{}: σ(x,b) = {:.3}  σ(b,x) = {:.3}",
                h + 1,
                pair.sigma_x_b,
                pair.sigma_b_x
            );
        }
    }
    for rule in [Rule::Pessimistic, Rule::Optimistic] {
        let a = assign(&matrix, &params, rule)?;
        println!("{rule}: {:?} (0 is the worst class)", a.classes);
    }
    Ok(())
}
