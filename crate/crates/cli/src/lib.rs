//! Scenario runner for `statsym-core`: the triangle, spin and tetrahedron
//! worked examples, the invariant suite, and user-supplied JSON scenarios.
//! Every scenario produces a [`ScenarioReport`].

pub mod app;
pub mod fixtures;
mod report;
pub mod scenarios;
pub mod suite;

pub use report::{Check, CheckKind, ScenarioReport, Summary};
pub use scenarios::*;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {0}: {1}")]
    Io(String, std::io::Error),
    #[error("invalid scenario JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Core(#[from] statsym_core::Error),
}
