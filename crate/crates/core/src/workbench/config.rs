//! Validated run configuration shared by the command-line front end.

use super::WorkbenchError;
use crate::exactpoly::GbConfig;
use crate::feasibility::FeasConfig;
use crate::solver::{GridVar, SearchConfig};
use crate::spectra::SpectraConfig;
use crate::varietygen::{InvolutionType, RationalCharTable};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Gen,
    Reduce,
    Gb,
    Search,
    Analyze,
    Feas,
    Tables,
    Repro,
    Catalog,
}

/// Trace identities imposed on a template.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AssumptionSpec {
    Pseudocyclic,
    /// Rationalized table read from a JSON file.
    Table(PathBuf),
}

impl FromStr for AssumptionSpec {
    type Err = WorkbenchError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once(':') {
            None if s == "pseudocyclic" => Ok(AssumptionSpec::Pseudocyclic),
            Some(("table", f)) if !f.is_empty() => Ok(AssumptionSpec::Table(PathBuf::from(f))),
            _ => Err(WorkbenchError::Config(format!("assumption `{s}`: expected pseudocyclic or table:<file>"))),
        }
    }
}

impl AssumptionSpec {
    pub fn load_table(&self) -> Result<Option<RationalCharTable>, WorkbenchError> {
        match self {
            AssumptionSpec::Pseudocyclic => Ok(None),
            AssumptionSpec::Table(p) => {
                let t: RationalCharTable = read_json(p)?;
                if !t.is_valid() {
                    return Err(WorkbenchError::Config(format!("{}: table violates the orthogonality relations", p.display())));
                }
                Ok(Some(t))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    #[default]
    Text,
    Machine,
}

impl FromStr for OutputFormat {
    type Err = WorkbenchError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "machine" => Ok(OutputFormat::Machine),
            _ => Err(WorkbenchError::Config(format!("format `{s}`: expected text or machine"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub order: Option<i64>,
    pub itype: Option<InvolutionType>,
    pub assumption: Option<AssumptionSpec>,
    pub grid: Vec<GridVar>,
    pub precision_bits: u32,
    pub eps: f64,
    pub lmax: Option<usize>,
    pub jobs: usize,
    pub cap_degree: u32,
    pub cap_terms: usize,
    pub store: Option<PathBuf>,
    pub format: OutputFormat,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        let gb = GbConfig::default();
        let feas = FeasConfig::default();
        RunConfig {
            command,
            order: None,
            itype: None,
            assumption: None,
            grid: Vec::new(),
            precision_bits: feas.spectra.precision,
            eps: feas.eps,
            lmax: None,
            jobs: 0,
            cap_degree: gb.max_degree,
            cap_terms: gb.max_terms,
            store: None,
            format: OutputFormat::Text,
        }
    }

    /// Checks everything that can be checked without computing.
    pub fn validate(&self) -> Result<(), WorkbenchError> {
        let bad = |m: String| Err(WorkbenchError::Config(m));
        if self.precision_bits < 64 {
            return bad(format!("precision {} bits is below 64", self.precision_bits));
        }
        if !(self.eps.is_finite() && self.eps > 0.0 && self.eps < 1.0) {
            return bad(format!("eps {} must lie in (0, 1)", self.eps));
        }
        if self.cap_degree == 0 || self.cap_terms == 0 {
            return bad("resource caps must be positive".into());
        }
        if let Some(n) = self.order {
            if n < 2 {
                return bad(format!("order {n} is below 2"));
            }
        }
        if matches!(self.command, Command::Gen | Command::Reduce | Command::Gb) && self.itype.is_none() {
            return bad("--itype is required".into());
        }
        if self.command == Command::Tables && self.order.is_none() {
            return bad("--order is required".into());
        }
        if let (Some(AssumptionSpec::Table(_)), Some(t)) = (&self.assumption, self.itype) {
            if t.rank() != 5 {
                return bad(format!("rationalized tables need a rank-5 type, got {t}"));
            }
        }
        if let Some(AssumptionSpec::Table(p)) = &self.assumption {
            if !p.exists() {
                return bad(format!("table file {} does not exist", p.display()));
            }
        }
        for g in &self.grid {
            if g.name.is_empty() {
                return bad("grid variable without a name".into());
            }
        }
        Ok(())
    }

    pub fn gb_config(&self) -> GbConfig {
        GbConfig { max_degree: self.cap_degree, max_terms: self.cap_terms, max_pairs: None }
    }

    pub fn feas_config(&self) -> FeasConfig {
        let d = FeasConfig::default();
        FeasConfig { eps: self.eps, lmax: self.lmax, spectra: SpectraConfig { precision: self.precision_bits, ..d.spectra }, ..d }
    }

    /// Caps and parallelism of this run applied over a search file.
    pub fn apply_to(&self, mut s: SearchConfig) -> SearchConfig {
        s.gb = self.gb_config();
        if self.jobs > 0 {
            s.jobs = self.jobs;
        }
        if let Some(t) = self.itype {
            s.itype = t;
        }
        if !self.grid.is_empty() {
            s.grid = self.grid.clone();
        }
        s
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, WorkbenchError> {
    let text = std::fs::read_to_string(path).map_err(|e| WorkbenchError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| WorkbenchError::Format(format!("{}: {e}", path.display())))
}

/// Search configuration from a JSON file, validated.
pub fn load_search_config(path: &Path) -> Result<SearchConfig, WorkbenchError> {
    let cfg: SearchConfig = read_json(path)?;
    for g in &cfg.grid {
        if g.name.is_empty() {
            return Err(WorkbenchError::Config(format!("{}: grid variable without a name", path.display())));
        }
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_assumptions_and_formats() {
        assert_eq!("pseudocyclic".parse::<AssumptionSpec>().unwrap(), AssumptionSpec::Pseudocyclic);
        assert_eq!("table:t.json".parse::<AssumptionSpec>().unwrap(), AssumptionSpec::Table("t.json".into()));
        assert!("table:".parse::<AssumptionSpec>().is_err());
        assert!("homogeneous".parse::<AssumptionSpec>().is_err());
        assert_eq!("machine".parse::<OutputFormat>().unwrap(), OutputFormat::Machine);
        assert!("xml".parse::<OutputFormat>().is_err());
    }

    #[test]
    fn validation() {
        let mut c = RunConfig::new(Command::Tables);
        assert!(c.validate().is_err());
        c.order = Some(35);
        c.validate().unwrap();
        c.eps = -1.0;
        assert!(c.validate().is_err());
        let mut g = RunConfig::new(Command::Gen);
        assert!(g.validate().is_err());
        g.itype = Some(InvolutionType::A41);
        g.validate().unwrap();
        g.assumption = Some(AssumptionSpec::Table("missing.json".into()));
        assert!(g.validate().is_err());
        g.precision_bits = 10;
        assert!(g.validate().is_err());
    }

    #[test]
    fn derived_configs() {
        let mut c = RunConfig::new(Command::Search);
        c.cap_degree = 7;
        c.precision_bits = 512;
        c.lmax = Some(9);
        assert_eq!(c.gb_config().max_degree, 7);
        let f = c.feas_config();
        assert_eq!((f.spectra.precision, f.lmax), (512, Some(9)));
    }
}
