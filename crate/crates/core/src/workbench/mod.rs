//! Fixtures, catalog persistence, reports and reproduction scenarios.

pub mod analyze;
pub mod catalog;
pub mod compare;
pub mod config;
pub mod fixtures;
pub mod repro;

use crate::exactpoly::PolyError;
use crate::feasibility::FeasError;
use crate::solver::SolveError;
use crate::spectra::SpectraError;
use crate::structcheck::StructError;
use crate::varietygen::VarietyError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WorkbenchError {
    #[error(transparent)]
    Struct(#[from] StructError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Feas(#[from] FeasError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error("i/o: {0}")]
    Io(String),
    #[error("malformed record: {0}")]
    Format(String),
    #[error("schema version {found}, expected {expected}")]
    Schema { found: u32, expected: u32 },
    #[error("instance {0} is already catalogued")]
    Duplicate(String),
    #[error("digest collision or corrupted entry {0}")]
    Collision(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
}

impl WorkbenchError {
    pub fn io(e: std::io::Error) -> Self {
        WorkbenchError::Io(e.to_string())
    }
}
