//! Exact verification and classification of concrete instances: axioms,
//! characteristic polynomials, integer factorization, multiplicities and
//! Galois classes of eigenvalue factors.

mod canonical;
mod charpoly;
mod factor;
mod galois;
mod instance;
mod spectrum;

pub use canonical::{canonical_form, star_compatible_perms};
pub use charpoly::{charpoly, charpoly_big, eval_at_matrix};
pub use factor::{factor_cmp, factor_int_poly, format_factorization, linear_root_of, parse_factorization};
pub use galois::{galois_class, GaloisClass, GaloisTag};
pub use instance::{verify_sita, Axiom, AxiomCheck, Instance, IntMatrix, SitaReport};
pub use spectrum::{factor_charpoly, is_cyclotomic, multiplicities, CharacterOrbit, CyclotomicReport, FactorClass, Multiplicities};

pub(crate) use charpoly::mat_mul_big;
pub(crate) use spectrum::combined_matrix;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructError {
    #[error("malformed instance: {0}")]
    Shape(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("polynomial is reducible: {0}")]
    Reducible(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("cannot parse `{0}`")]
    Parse(String),
}
