//! Combinatorial and exact-geometric analyses of a [`Logic`](crate::Logic).

mod collapse;
mod generators;
mod parity;
mod realization;
mod rules;
mod states;

use thiserror::Error;

use crate::model::ModelError;

pub use collapse::{infer_collapses, CollapseReport, Identification};
pub use generators::{complete_contexts, make_star, sequence_label};
pub use parity::{parity_obstruction, ParityCertificate};
pub use realization::{verify_realization, ContextCheck, OffendingPair, RealizationReport};
pub use rules::{derive_rules, Derivation, RuleSet};
pub use states::{enumerate_states, StateSpaceReport, TwoValuedState};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("abstract logic: atom `{atom}` has no ray")]
    AbstractLogic { atom: String },
    #[error("star configurations need dimension at least 3, got {0}")]
    StarDimension(usize),
    #[error("rays of `{0}` and `{1}` are collinear")]
    CollinearInputs(String, String),
    #[error("vector `{0}` is orthogonal to no other vector")]
    IsolatedVector(String),
    #[error("state report does not belong to this logic")]
    ReportMismatch,
    #[error(transparent)]
    Model(#[from] ModelError),
}
