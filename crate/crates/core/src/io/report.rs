use std::fmt::Write;

use crate::ensemble::VoteResult;
use crate::params::TriBParameters;

/// Per-alternative votes next to the merged-model class.
#[derive(Clone, Debug, PartialEq)]
pub struct VoteTable {
    pub alternatives: Vec<String>,
    /// Best to worst.
    pub class_names: Vec<String>,
    pub votes: VoteResult,
    pub merged_classes: Vec<usize>,
    pub reference: Option<Vec<Option<usize>>>,
}

impl VoteTable {
    fn name(&self, class: usize) -> &str {
        &self.class_names[self.class_names.len() - 1 - class]
    }

    pub fn render(&self) -> String {
        let k = self.class_names.len();
        let mut header = vec!["id".to_owned()];
        header.extend(self.class_names.iter().cloned());
        header.extend(["vote".to_owned(), "merged".to_owned()]);
        if self.reference.is_some() {
            header.push("reference".to_owned());
        }
        let mut rows = vec![header];
        for (i, id) in self.alternatives.iter().enumerate() {
            let mut r = vec![id.clone()];
            r.extend((0..k).rev().map(|c| self.votes.counts[i][c].to_string()));
            r.push(self.name(self.votes.winners[i]).to_owned());
            r.push(self.name(self.merged_classes[i]).to_owned());
            if let Some(reference) = &self.reference {
                r.push(reference[i].map_or("-".to_owned(), |c| self.name(c).to_owned()));
            }
            rows.push(r);
        }
        table(&rows)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ElicitReport {
    pub criteria: Vec<String>,
    pub merged: TriBParameters,
    pub models_total: usize,
    pub models_used: usize,
    pub mean_accuracy: f64,
    pub perfect_share: f64,
    pub merged_accuracy: f64,
    pub vote_accuracy: f64,
    /// Model counts over ten accuracy bins `[0, 0.1)`, ..., `[0.9, 1]`.
    pub histogram: Vec<usize>,
    pub votes: VoteTable,
}

impl ElicitReport {
    /// Sections `[Parameters]`, `[Accuracy]`, `[Histogram]` and `[Votes]`.
    /// Parameters print in shortest round-trip form.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str("[Parameters]\n");
        out.push_str(&parameter_table(&self.criteria, &self.merged));
        out.push_str("\n[Accuracy]\n");
        let acc = [
            ("models", self.models_total.to_string()),
            ("models_used", self.models_used.to_string()),
            ("mean_model", format!("{:.4}", self.mean_accuracy)),
            ("perfect_share", format!("{:.4}", self.perfect_share)),
            ("merged", format!("{:.4}", self.merged_accuracy)),
            ("vote", format!("{:.4}", self.vote_accuracy)),
        ];
        for (k, v) in acc {
            let _ = writeln!(out, "{k} = {v}");
        }
        out.push_str("\n[Histogram]\n");
        let bins = self.histogram.len();
        for (b, n) in self.histogram.iter().enumerate() {
            let lo = b as f64 / bins as f64;
            let hi = (b + 1) as f64 / bins as f64;
            let close = if b + 1 == bins { ']' } else { ')' };
            let _ = writeln!(out, "[{lo:.1}, {hi:.1}{close} {n}");
        }
        out.push_str("\n[Votes]\n");
        out.push_str(&self.votes.render());
        out
    }
}

/// Rows `w`, `q`, `p`, `v`, `b1`.. and `lambda` against the criteria.
pub fn parameter_table(criteria: &[String], params: &TriBParameters) -> String {
    let fmt = |x: f64| {
        if x == f64::INFINITY {
            "none".to_owned()
        } else {
            x.to_string()
        }
    };
    let mut rows = vec![std::iter::once("parameter".to_owned())
        .chain(criteria.iter().cloned())
        .collect()];
    let mut push = |name: String, vals: &[f64]| {
        rows.push(
            std::iter::once(name)
                .chain(vals.iter().map(|&x| fmt(x)))
                .collect::<Vec<_>>(),
        );
    };
    push("w".into(), &params.weights);
    push("q".into(), &params.q);
    push("p".into(), &params.p);
    push("v".into(), &params.v);
    for (h, b) in params.profiles.iter().enumerate() {
        push(format!("b{}", h + 1), b);
    }
    push("lambda".into(), &[params.lambda]);
    table(&rows)
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:<w$}", w = widths[c]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}
