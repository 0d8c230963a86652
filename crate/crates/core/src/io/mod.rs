//! Files in and out: CSV ingestion with normalization, TOML run
//! configuration, JSON ensemble persistence, text reports and boundary
//! grids.

pub mod boundary;
pub mod config;
pub mod persist;
pub mod report;
pub mod run;
pub mod table;

pub use boundary::{boundary_grid, write_grid, BoundaryModel, GridPoint};
pub use config::{default_class_names, DeclBound, Direction, Normalization, ReferenceSource, RunConfig, SpecConfig};
pub use persist::{EnsembleFile, FORMAT_TAG};
pub use report::{ElicitReport, VoteTable};
pub use run::{elicit, run_classify, run_cluster, run_elicit, run_trib, ClassifyOutcome, ElicitOutcome};
pub use table::{
    load_dataset, load_matrix, load_unlabeled, load_with_preprocessing, write_matrix, Dataset, Preprocessing,
};
