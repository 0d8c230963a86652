use electre_tree::io::{load_matrix, write_matrix, EnsembleFile, RunConfig};
use electre_tree::{datasets, DecisionMatrix, ReferenceLabels};
use proptest::prelude::*;

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![any::<f64>().prop_filter("finite", |v| v.is_finite()), -1e6..1e6f64]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn csv_round_trip_is_bit_identical(
        rows in prop::collection::vec(prop::collection::vec(finite(), 3), 2..12),
        labels in prop::collection::vec(prop::option::of(0usize..3), 12),
    ) {
        let m = DecisionMatrix::from_rows(rows).unwrap();
        let l = ReferenceLabels::new(
            labels[..m.n_alternatives()].to_vec(),
            3,
            electre_tree::LabelSource::AssignmentExamples,
        ).unwrap();
        let names = vec!["A".to_owned(), "B".to_owned(), "C".to_owned()];
        let mut buf = Vec::new();
        write_matrix(&mut buf, &m, Some(("class", &l, &names))).unwrap();
        let config = RunConfig::from_toml("k = 3\nlabel_column = \"class\"\n").unwrap();
        let back = load_matrix(buf.as_slice(), &config).unwrap();
        let bits = |m: &DecisionMatrix| m.rows().iter().flatten().map(|v| v.to_bits()).collect::<Vec<_>>();
        prop_assert_eq!(bits(&back.matrix), bits(&m));
        let got = back.labels.unwrap();
        prop_assert_eq!(got.labels(), l.labels());
    }
}

#[test]
fn dataset1_loads_as_bundled() {
    let config = RunConfig::from_toml("k = 4\nlabel_column = \"class\"\n").unwrap();
    let d = load_matrix(datasets::DATASET1_CSV.as_bytes(), &config).unwrap();
    assert_eq!(d.matrix, datasets::dataset1());
    assert_eq!(d.labels.unwrap().labels(), datasets::dataset1_classes().labels());
}

#[test]
fn config_file_round_trips() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/dataset1.toml");
    let c = RunConfig::load(path.as_ref()).unwrap();
    assert!(c.dataset.ends_with("dataset1.csv"));
    assert!(c.dataset.exists());
    let back = RunConfig::from_toml(&c.to_toml().unwrap()).unwrap();
    assert_eq!(back, c);
}

#[test]
fn ensemble_file_with_vetoes_disabled_round_trips() {
    let text = r#"
k = 4
label_column = "class"
n_models = 12
[ga]
generations = 4
[spec]
v = "none"
"#;
    let c = RunConfig::from_toml(text).unwrap();
    let d = load_matrix(datasets::DATASET1_CSV.as_bytes(), &c).unwrap();
    let out = electre_tree::io::elicit(&c, d).unwrap();
    assert!(out.file.merged.v.iter().all(|v| v.is_infinite()));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.json");
    out.file.save(&path).unwrap();
    let back = EnsembleFile::load(&path).unwrap();
    assert_eq!(back, out.file);
    let tampered = std::fs::read_to_string(&path)
        .unwrap()
        .replace("electre-tree-ensemble/1", "other/9");
    assert!(EnsembleFile::from_json(&tampered).is_err());
}
