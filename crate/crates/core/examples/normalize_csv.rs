//! Min-max normalization on ingestion, with a cost criterion reversed so
//! that every criterion is maximized.

use electre_tree::io::{load_matrix, write_matrix, RunConfig};

const CSV: &str = "\
id,comfort,price,grade
car1,7,32000,good
car2,5,18000,
car3,9,45000,top
car4,4,15000,poor
";

fn main() -> electre_tree::Result<()> {
    let config = RunConfig::from_toml(
        r#"
k = 3
class_names = ["top", "good", "poor"]
label_column = "grade"
normalization = "minmax"

[directions]
price = "min"
"#,
    )?;
    let data = load_matrix(CSV.as_bytes(), &config)?;
    for t in &data.preprocessing.criteria {
        println!("{}: {:?} over [{}, {}]", t.name, t.direction, t.min, t.max);
    }
    let labels = data.labels.expect("label column configured");
    let names = config.class_names();
    write_matrix(std::io::stdout(), &data.matrix, Some(("grade", &labels, &names)))?;
    Ok(())
}
