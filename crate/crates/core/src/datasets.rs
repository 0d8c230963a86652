//! Bundled reference data: the 64-alternative, two-criterion synthetic set
//! with four ordered blocks, and the parameter sets reported for it.

use crate::labels::ReferenceLabels;
use crate::matrix::DecisionMatrix;
use crate::params::TriBParameters;

/// `id,g1,g2,class` with classes `A > B > C > D`.
pub const DATASET1_CSV: &str = include_str!("../data/dataset1.csv");

fn parse() -> (Vec<String>, Vec<Vec<f64>>, Vec<usize>) {
    let mut ids = Vec::new();
    let mut rows = Vec::new();
    let mut classes = Vec::new();
    for line in DATASET1_CSV.lines().skip(1).filter(|l| !l.is_empty()) {
        let f: Vec<&str> = line.split(',').collect();
        ids.push(f[0].to_string());
        rows.push(vec![f[1].parse().unwrap(), f[2].parse().unwrap()]);
        classes.push(match f[3] {
            "D" => 0,
            "C" => 1,
            "B" => 2,
            _ => 3,
        });
    }
    (ids, rows, classes)
}

pub fn dataset1() -> DecisionMatrix {
    let (ids, rows, _) = parse();
    DecisionMatrix::new(ids, vec!["g1".into(), "g2".into()], rows).expect("bundled data is valid")
}

/// Block membership as ordered labels (`D = 0` .. `A = 3`).
pub fn dataset1_classes() -> ReferenceLabels {
    ReferenceLabels::examples(parse().2, 4).expect("bundled labels are valid")
}

/// Parameters elicited for the synthetic set by averaging 1000 sub-models.
pub fn dataset1_merged_reference() -> TriBParameters {
    TriBParameters {
        weights: vec![0.52, 0.49],
        q: vec![3.78, 2.70],
        p: vec![5.83, 3.82],
        v: vec![10.70, 5.68],
        profiles: vec![vec![9.50, 8.20], vec![17.12, 10.68], vec![19.87, 13.45]],
        lambda: 0.76,
    }
}

/// One optimized sub-model of the synthetic set, with its 16 sampled rows
/// (0-based).
pub fn dataset1_sample_model() -> (Vec<usize>, TriBParameters) {
    let rows = [4, 7, 8, 13, 17, 19, 26, 28, 33, 35, 36, 38, 40, 50, 52, 64]
        .iter()
        .map(|x| x - 1)
        .collect();
    let params = TriBParameters {
        weights: vec![0.53, 0.29],
        q: vec![1.13, 1.67],
        p: vec![1.57, 6.73],
        v: vec![3.45, 6.77],
        profiles: vec![vec![1.24, 6.77], vec![19.59, 10.95], vec![20.83, 15.38]],
        lambda: 0.86,
    };
    (rows, params)
}
