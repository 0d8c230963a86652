//! Run a complete elicitation from a TOML config and print the report.

use electre_tree::io::{run_elicit, RunConfig};

fn main() -> electre_tree::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/dataset1.toml").to_owned());
    let config = RunConfig::load(path.as_ref())?;
    let out = run_elicit(&config)?;
    print!("{}", out.report.render());
    Ok(())
}
