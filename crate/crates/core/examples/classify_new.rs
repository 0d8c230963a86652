//! Elicit from a config, save the ensemble, reload it and classify
//! alternatives that were not part of the training data.

use electre_tree::io::{run_classify, run_elicit, EnsembleFile, RunConfig};

fn main() -> electre_tree::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/dataset1.toml");
    let mut config = RunConfig::load(path.as_ref())?;
    config.n_models = 300;
    let out = run_elicit(&config)?;

    let dir = std::env::temp_dir().join("electre-tree-example");
    std::fs::create_dir_all(&dir)?;
    let file = dir.join("ensemble.json");
    out.file.save(&file)?;
    let stored = EnsembleFile::load(&file)?;
    println!("saved {} models to {}", stored.ensemble.models.len(), file.display());

    let new = "id,g1,g2\nfresh1,25,17\nfresh2,18,10\nfresh3,3,12\nfresh4,12,6\n";
    let res = run_classify(&stored, new.as_bytes())?;
    if !res.fingerprint_matches {
        println!("(new data, as expected)");
    }
    print!("{}", res.table.render());
    Ok(())
}
