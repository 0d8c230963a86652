use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::{Direction, Normalization, RunConfig};
use crate::error::{Error, Result};
use crate::labels::{LabelSource, ReferenceLabels};
use crate::matrix::DecisionMatrix;

/// How one raw column was turned into a maximized criterion.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionTransform {
    pub name: String,
    pub direction: Direction,
    /// Raw column extremes seen at ingestion.
    pub min: f64,
    pub max: f64,
}

/// Preprocessing fitted on a training file, replayable on new data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Preprocessing {
    pub normalization: Normalization,
    pub criteria: Vec<CriterionTransform>,
}

impl Preprocessing {
    pub fn apply(&self, j: usize, raw: f64) -> f64 {
        let t = &self.criteria[j];
        match (self.normalization, t.direction) {
            (Normalization::None, _) => raw,
            (Normalization::MinMax, Direction::Max) => (raw - t.min) / (t.max - t.min),
            (Normalization::MinMax, Direction::Min) => (t.max - raw) / (t.max - t.min),
        }
    }

    pub fn names(&self) -> Vec<String> {
        self.criteria.iter().map(|c| c.name.clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    pub matrix: DecisionMatrix,
    pub labels: Option<ReferenceLabels>,
    pub preprocessing: Preprocessing,
}

struct RawTable {
    header: Vec<String>,
    ids: Vec<String>,
    rows: Vec<Vec<String>>,
    lines: Vec<usize>,
}

impl RawTable {
    fn read<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let header: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
        if header.len() < 2 {
            return Err(Error::invalid(
                "csv header needs an id column and at least one criterion",
            ));
        }
        let mut seen = header.clone();
        seen.sort();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("duplicate column '{}'", w[0])));
        }
        let mut ids = Vec::new();
        let mut rows = Vec::new();
        let mut lines = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            lines.push(rec.position().map_or(0, |p| p.line() as usize));
            ids.push(rec[0].to_owned());
            rows.push(rec.iter().skip(1).map(str::to_owned).collect());
        }
        Ok(Self {
            header,
            ids,
            rows,
            lines,
        })
    }

    fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().skip(1).position(|h| h == name)
    }

    fn require(&self, names: &[String]) -> Result<Vec<usize>> {
        let missing: Vec<String> = names.iter().filter(|n| self.column(n).is_none()).cloned().collect();
        if !missing.is_empty() {
            return Err(Error::MissingCriteria(missing));
        }
        Ok(names.iter().map(|n| self.column(n).unwrap()).collect())
    }

    fn numeric(&self, col: usize) -> Result<Vec<f64>> {
        self.rows
            .iter()
            .zip(&self.lines)
            .map(|(r, &line)| {
                let cell = &r[col];
                match cell.parse::<f64>() {
                    Ok(v) if v.is_finite() => Ok(v),
                    _ => Err(Error::Cell {
                        row: line,
                        column: self.header[col + 1].clone(),
                        message: format!("'{cell}' is not a finite number"),
                    }),
                }
            })
            .collect()
    }
}

/// Reads a decision matrix and optional assignment examples.
///
/// The first column holds alternative ids. Criteria are `config.criteria`
/// or every other column except `config.label_column`. Labels are class
/// names from `config.class_names()`; an empty cell leaves the alternative
/// unlabeled.
pub fn load_matrix<R: Read>(reader: R, config: &RunConfig) -> Result<Dataset> {
    read_dataset(reader, config, true)
}

/// Like [`load_matrix`] but leaves the label column unparsed.
pub fn load_unlabeled<R: Read>(reader: R, config: &RunConfig) -> Result<Dataset> {
    read_dataset(reader, config, false)
}

fn read_dataset<R: Read>(reader: R, config: &RunConfig, with_labels: bool) -> Result<Dataset> {
    let table = RawTable::read(reader)?;
    let names: Vec<String> = match &config.criteria {
        Some(c) => c.clone(),
        None => table
            .header
            .iter()
            .skip(1)
            .filter(|h| Some(*h) != config.label_column.as_ref())
            .cloned()
            .collect(),
    };
    if let Some(unknown) = config.directions.keys().find(|d| !names.contains(d)) {
        return Err(Error::UnknownCriterion(unknown.clone()));
    }
    let cols = table.require(&names)?;
    let mut transforms = Vec::with_capacity(names.len());
    let mut columns = Vec::with_capacity(names.len());
    for (name, &c) in names.iter().zip(&cols) {
        let raw = table.numeric(c)?;
        let direction = config.direction(name);
        let (min, max) = raw.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
        match config.normalization {
            Normalization::None if direction == Direction::Min => {
                return Err(Error::Config(format!(
                    "criterion '{name}' is minimized; use normalization = \"minmax\" to reverse it"
                )))
            }
            Normalization::MinMax if !raw.is_empty() && max == min => {
                return Err(Error::invalid(format!(
                    "column '{name}' is constant ({min}); min-max normalization is undefined"
                )))
            }
            _ => {}
        }
        transforms.push(CriterionTransform {
            name: name.clone(),
            direction,
            min,
            max,
        });
        columns.push(raw);
    }
    let preprocessing = Preprocessing {
        normalization: config.normalization,
        criteria: transforms,
    };
    let values = (0..table.ids.len())
        .map(|i| {
            (0..columns.len())
                .map(|j| preprocessing.apply(j, columns[j][i]))
                .collect()
        })
        .collect();
    let matrix = DecisionMatrix::new(table.ids.clone(), names, values)?;

    let labels = match &config.label_column {
        Some(col) if with_labels => {
            let c = table.require(std::slice::from_ref(col))?[0];
            let class_names = config.class_names();
            let k = class_names.len();
            let parsed = table
                .rows
                .iter()
                .zip(&table.lines)
                .map(|(r, &line)| {
                    let cell = &r[c];
                    if cell.is_empty() {
                        return Ok(None);
                    }
                    match class_names.iter().position(|n| n == cell) {
                        Some(pos) => Ok(Some(k - 1 - pos)),
                        None => Err(Error::Cell {
                            row: line,
                            column: col.clone(),
                            message: format!("unknown class '{cell}', expected one of {}", class_names.join(", ")),
                        }),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            Some(ReferenceLabels::new(parsed, k, LabelSource::AssignmentExamples)?)
        }
        _ => None,
    };
    Ok(Dataset {
        matrix,
        labels,
        preprocessing,
    })
}

pub fn load_dataset(config: &RunConfig) -> Result<Dataset> {
    load_matrix(open(&config.dataset)?, config)
}

/// Reads new alternatives and applies a fitted preprocessing. Extra columns
/// are ignored; missing criteria are listed in the error.
pub fn load_with_preprocessing<R: Read>(reader: R, pre: &Preprocessing) -> Result<DecisionMatrix> {
    let table = RawTable::read(reader)?;
    let names = pre.names();
    let cols = table.require(&names)?;
    let columns = cols.iter().map(|&c| table.numeric(c)).collect::<Result<Vec<_>>>()?;
    let values = (0..table.ids.len())
        .map(|i| (0..columns.len()).map(|j| pre.apply(j, columns[j][i])).collect())
        .collect();
    DecisionMatrix::new(table.ids, names, values)
}

/// Writes `id,<criteria>...[,label]`. Values use the shortest
/// representation that parses back to the same `f64`.
pub fn write_matrix<W: Write>(
    writer: W,
    matrix: &DecisionMatrix,
    labels: Option<(&str, &ReferenceLabels, &[String])>,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["id".to_owned()];
    header.extend(matrix.criteria().iter().cloned());
    if let Some((col, _, _)) = labels {
        header.push(col.to_owned());
    }
    w.write_record(&header)?;
    for (i, row) in matrix.rows().iter().enumerate() {
        let mut rec = vec![matrix.alternatives()[i].clone()];
        rec.extend(row.iter().map(|v| v.to_string()));
        if let Some((_, l, names)) = labels {
            rec.push(match l.get(i) {
                Some(c) => names[names.len() - 1 - c].clone(),
                None => String::new(),
            });
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// Opens a file, naming it in the error.
pub fn open(path: &Path) -> Result<std::fs::File> {
    std::fs::File::open(path).map_err(|source| Error::File {
        path: path.to_path_buf(),
        source,
    })
}
