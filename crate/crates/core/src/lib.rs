//! ELECTRE Tri-B ordered classification and ensemble elicitation of its
//! parameters.
//!
//! The crate is organized bottom-up:
//!
//! * [`matrix`], [`params`], [`spec`], [`labels`]: domain types and checks.
//! * [`tri_b`]: concordance, discordance, credibility and the pessimistic /
//!   optimistic assignment rules.
//! * [`clustering`]: k-means++ and the ordering of clusters into classes,
//!   used as a reference when no assignment examples exist.
//! * [`evolve`]: a real-coded GA (SBX crossover, RJGGA mutation, clipping,
//!   elitism) that searches the free parameters for maximum accuracy.
//! * [`ensemble`]: bootstrap sub-models, majority vote and parameter merge.
//! * [`io`]: CSV ingestion, run configuration, persistence, reports and
//!   decision-boundary grids.
//!
//! ```
//! use electre_tree::{datasets, tri_b};
//!
//! let matrix = datasets::dataset1();
//! let params = datasets::dataset1_merged_reference();
//! let out = tri_b::assign_pessimistic(&matrix, &params).unwrap();
//! assert_eq!(out.classes[0], 0);
//! ```

pub mod clustering;
pub mod datasets;
pub mod ensemble;
pub mod error;
pub mod evolve;
pub mod io;
pub mod labels;
pub mod matrix;
pub mod params;
pub mod spec;
pub mod tri_b;

pub use error::{Error, Result};
pub use labels::{LabelSource, ReferenceLabels};
pub use matrix::DecisionMatrix;
pub use params::{validate_parameters, TriBParameters, ValidationReport};
pub use spec::{ElicitationSpec, GeneBound, ParamRef};
pub use tri_b::Rule;
