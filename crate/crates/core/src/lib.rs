//! Pairwise comparison matrix toolkit.
//!
//! Computes priority weights with the eigenvector and row geometric mean
//! methods, measures inconsistency, generates random matrices for simulation
//! studies, and audits five properties on which the eigenvector method can
//! fail: right-left symmetry, group coherence for choice, scale invariance,
//! rank/weight monotonicity and Pareto efficiency.

pub mod auditors;
pub mod error;
pub mod experiment;
pub mod fixtures;
pub mod generators;
pub mod inconsistency;
pub mod io;
pub mod matrix;
pub mod metrics;
pub mod rng;
pub mod weighting;

pub use auditors::{AuditReport, DominanceCertificate, Efficiency, Property, Verdict};
pub use error::{Error, Result};
pub use generators::{ExperimentSpec, PerturbationSpec, Scheme};
pub use inconsistency::{InconsistencyReport, RiSource, RiTable};
pub use matrix::{Entry, EntryKind, Pcm, SaatyScale, TriadCensus};
pub use metrics::{Ranking, TauVariant};
pub use weighting::{EigenConfig, EigenResult, Method, Normalization, WeightVector};
