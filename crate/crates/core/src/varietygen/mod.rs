//! Symbolic regular-matrix templates, structure-constant polynomial
//! systems, trace identities and rationalized character tables.

mod tables;
mod template;

pub use tables::{enumerate_rational_tables, RationalCharTable};
pub use template::{build_template, build_template_with, emit_pair_polys, emit_structure_polys, trace_constraints, Assumption, DegreeSymbols, Elimination, Template, TemplateOptions, TraceSource};

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VarietyError {
    #[error("unsupported rank {rank} for involution type {itype}")]
    Unsupported { rank: usize, itype: String },
    #[error("unknown involution type `{0}`")]
    UnknownType(String),
    #[error("assumption does not match trace source")]
    AssumptionMismatch,
}

/// Involution type of the standard basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InvolutionType {
    R2,
    R3S,
    R3A,
    #[serde(rename = "4S")]
    S4,
    #[serde(rename = "4A1")]
    A41,
    #[serde(rename = "5S")]
    S5,
    #[serde(rename = "5A1")]
    A51,
    #[serde(rename = "5A2")]
    A52,
}

impl InvolutionType {
    pub const ALL: [InvolutionType; 8] = [
        InvolutionType::R2,
        InvolutionType::R3S,
        InvolutionType::R3A,
        InvolutionType::S4,
        InvolutionType::A41,
        InvolutionType::S5,
        InvolutionType::A51,
        InvolutionType::A52,
    ];

    pub fn rank(self) -> usize {
        match self {
            InvolutionType::R2 => 2,
            InvolutionType::R3S | InvolutionType::R3A => 3,
            InvolutionType::S4 | InvolutionType::A41 => 4,
            InvolutionType::S5 | InvolutionType::A51 | InvolutionType::A52 => 5,
        }
    }

    /// Star permutation on basis indices.
    pub fn star(self) -> Vec<usize> {
        match self {
            InvolutionType::R2 => vec![0, 1],
            InvolutionType::R3S => vec![0, 1, 2],
            InvolutionType::R3A => vec![0, 2, 1],
            InvolutionType::S4 => vec![0, 1, 2, 3],
            InvolutionType::A41 => vec![0, 1, 3, 2],
            InvolutionType::S5 => vec![0, 1, 2, 3, 4],
            InvolutionType::A51 => vec![0, 1, 2, 4, 3],
            InvolutionType::A52 => vec![0, 2, 1, 4, 3],
        }
    }

    pub fn asymmetric_pairs(self) -> usize {
        let s = self.star();
        s.iter().enumerate().filter(|(i, &j)| j > *i).count()
    }

    pub fn is_symmetric(self) -> bool {
        self.asymmetric_pairs() == 0
    }

    /// Type with the given rank and star permutation.
    pub fn from_star(star: &[usize]) -> Option<InvolutionType> {
        let r = star.len();
        let pairs = star.iter().enumerate().filter(|(i, &j)| j > *i).count();
        let cands: Vec<InvolutionType> = Self::ALL.iter().copied().filter(|t| t.rank() == r && t.asymmetric_pairs() == pairs).collect();
        cands.first().copied()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            InvolutionType::R2 => "R2",
            InvolutionType::R3S => "R3S",
            InvolutionType::R3A => "R3A",
            InvolutionType::S4 => "4S",
            InvolutionType::A41 => "4A1",
            InvolutionType::S5 => "5S",
            InvolutionType::A51 => "5A1",
            InvolutionType::A52 => "5A2",
        }
    }
}

impl fmt::Display for InvolutionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InvolutionType {
    type Err = VarietyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL.iter().copied().find(|t| t.as_str().eq_ignore_ascii_case(s)).ok_or_else(|| VarietyError::UnknownType(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_invariants() {
        for t in InvolutionType::ALL {
            let s = t.star();
            assert_eq!(s.len(), t.rank());
            assert_eq!(s[0], 0);
            for i in 0..s.len() {
                assert_eq!(s[s[i]], i);
            }
            assert_eq!(t.as_str().parse::<InvolutionType>().unwrap(), t);
        }
        assert_eq!(InvolutionType::A52.asymmetric_pairs(), 2);
        assert_eq!(InvolutionType::A41.asymmetric_pairs(), 1);
        assert_eq!(InvolutionType::from_star(&[0, 1, 2, 4, 3]), Some(InvolutionType::A51));
    }
}
