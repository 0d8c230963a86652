//! Decision-boundary grids for voting and for the merged model, printed as
//! character maps and optionally written as CSV.

use std::collections::BTreeMap;

use electre_tree::datasets;
use electre_tree::ensemble::{build_ensemble, merge_parameters, EnsembleConfig, Reference};
use electre_tree::io::{boundary_grid, write_grid, BoundaryModel};
use electre_tree::ElicitationSpec;

fn main() -> electre_tree::Result<()> {
    let matrix = datasets::dataset1();
    let spec = ElicitationSpec::free(&matrix, 4)?;
    let config = EnsembleConfig {
        n_models: 300,
        seed: 5,
        ..EnsembleConfig::default()
    };
    let ensemble = build_ensemble(&matrix, &Reference::Clusters { k: 4 }, &spec, &config)?;
    let model = BoundaryModel {
        criteria: matrix.criteria().to_vec(),
        ranges: (0..2).map(|j| matrix.column_range(j)).collect(),
        merged: merge_parameters(&ensemble, &spec)?,
        rule: config.rule,
        ensemble: Some(ensemble),
    };
    let n = 40;
    let grid = boundary_grid(&model, "g1", "g2", n, &BTreeMap::new())?;
    let glyph = ['D', 'C', 'B', 'A'];
    for (title, pick) in [("vote", 0), ("merged", 1)] {
        println!("{title} (g1 →, g2 ↑)");
        for row in grid.chunks(n).rev() {
            let line: String = row
                .iter()
                .map(|p| glyph[if pick == 0 { p.vote_class } else { p.merged_class }])
                .collect();
            println!("  {line}");
        }
    }
    if let Some(path) = std::env::args().nth(1) {
        write_grid(std::fs::File::create(&path)?, &grid)?;
        println!("wrote {path}");
    }
    Ok(())
}
