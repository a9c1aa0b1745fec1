//! Integer points on parameter varieties: exact zero-dimensional solving
//! and parallel grid searches.

mod search;
mod solve;

pub use crate::structcheck::canonical_form;
pub use search::{grid_points, instance_key, prepare_systems, run_search, solve_point, Bound, Family, GridVar, PointOutcome, PointStatus, PreparedSystem, SearchConfig, SearchOutput, SumCap};
pub use solve::{specialize_and_solve, specialize_and_solve_partial, univariate_eliminant, Solution};

use crate::exactpoly::PolyError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("positive-dimensional remainder in {}", .0.join(","))]
    PositiveDimensional(Vec<String>),
    #[error("resource cap: {0}")]
    Cap(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("invalid search configuration: {0}")]
    Config(String),
}
