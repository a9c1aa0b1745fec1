//! Exact multivariate polynomials over Q, monomial orders, normal forms,
//! reduced Gröbner bases and linear elimination.

mod groebner;
mod linear;
mod monomial;
mod order;
mod parse;
mod poly;
mod polyset;
mod span;
pub mod univariate;

pub use groebner::{buchberger, buchberger_with, is_groebner_basis, normal_form, s_polynomial, GbConfig, GbStats, GroebnerBasis};
pub use linear::{linear_reduce, linear_reduce_with, LinearReduceOptions, LinearReduction, Substitution};
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use parse::{format_poly, parse_poly};
pub use poly::{MPoly, Ring};
pub use polyset::PolySet;
pub use span::{coefficient_rank, rational_span_basis};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("inconsistent ideal: generator reduced to nonzero constant ({0})")]
    Inconsistent(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("empty generating set")]
    Empty,
}
