use std::path::PathBuf;

use thiserror::Error;

use crate::params::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A domain object failed a structural check (shape, ordering, bounds).
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("invalid parameters: {0}")]
    Parameters(ValidationReport),

    #[error("degenerate weights: the weights sum to zero")]
    DegenerateWeights,

    #[error("not enough distinct observations: requested {requested} clusters but only {distinct} distinct rows")]
    NotEnoughDistinct { requested: usize, distinct: usize },

    #[error("no labeled alternatives to measure accuracy against")]
    NoLabels,

    #[error("could not draw a sample containing labeled alternatives after {0} attempts")]
    ResampleExhausted(usize),

    #[error("uncovered criterion: no model in the ensemble uses criterion {0}")]
    UncoveredCriterion(usize),

    #[error("ensemble is empty{0}")]
    EmptyEnsemble(&'static str),

    #[error("unknown criterion '{0}'")]
    UnknownCriterion(String),

    #[error("missing criteria: {}", .0.join(", "))]
    MissingCriteria(Vec<String>),

    #[error("csv line {row}, column '{column}': {message}")]
    Cell {
        row: usize,
        column: String,
        message: String,
    },

    #[error("configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    TomlDe(#[from] toml::de::Error),

    #[error(transparent)]
    TomlSer(#[from] toml::ser::Error),
}

impl Error {
    /// Whether the error stems from bad user input rather than a failure at
    /// run time. The CLI maps the former to exit code 1 and the latter to 2.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::Io(_) | Error::File { .. } | Error::ResampleExhausted(_) | Error::Json(_)
        )
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
