use super::analyze::{Analysis, SpectraSummary};
use super::WorkbenchError;
use crate::feasibility::FeasibilityReport;
use crate::structcheck::{canonical_form, Instance};
use crate::varietygen::InvolutionType;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

pub const SCHEMA_VERSION: u32 = 1;

/// One catalogued instance. Field order is the serialization order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub schema: u32,
    pub digest: String,
    pub order: i64,
    pub itype: Option<InvolutionType>,
    pub degrees: Vec<i64>,
    pub matrices: Vec<Vec<Vec<i64>>>,
    pub multiplicities: Vec<String>,
    pub factorizations: Vec<String>,
    pub galois: Vec<String>,
    pub cyclotomic: bool,
    pub feasible: Option<bool>,
    pub spectra: Option<SpectraSummary>,
    pub feasibility: Option<FeasibilityReport>,
    /// Fixture name or search configuration hash.
    pub provenance: String,
}

/// Hex SHA-256 of the canonical matrices.
pub fn instance_digest(inst: &Instance) -> String {
    let canon = canonical_form(inst);
    let bytes = serde_json::to_vec(&canon.matrices).expect("integer matrices serialize");
    hex(&Sha256::digest(&bytes))
}

/// Hex SHA-256 of any serializable value, for provenance tags.
pub fn config_digest<T: Serialize>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("config serializes");
    hex(&Sha256::digest(&bytes))[..16].to_string()
}

fn hex(b: &[u8]) -> String {
    b.iter().map(|x| format!("{x:02x}")).collect()
}

impl CatalogEntry {
    pub fn from_analysis(a: &Analysis, provenance: &str) -> Self {
        CatalogEntry {
            schema: SCHEMA_VERSION,
            digest: instance_digest(&a.instance),
            order: a.instance.order,
            itype: a.instance.itype,
            degrees: a.instance.degrees.clone(),
            matrices: canonical_form(&a.instance).matrices,
            multiplicities: a.multiplicities.clone(),
            factorizations: a.factorizations.clone(),
            galois: a.galois.clone(),
            cyclotomic: a.cyclotomic,
            feasible: a.feasibility.as_ref().map(|f| f.feasible()),
            spectra: a.spectra.clone(),
            feasibility: a.feasibility.clone(),
            provenance: provenance.to_string(),
        }
    }

    pub fn instance(&self) -> Result<Instance, WorkbenchError> {
        Ok(Instance::new(self.matrices.clone())?)
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("catalog entry serializes")
    }

    pub fn from_line(line: &str) -> Result<Self, WorkbenchError> {
        let v: serde_json::Value = serde_json::from_str(line).map_err(|e| WorkbenchError::Format(e.to_string()))?;
        let found = v.get("schema").and_then(|s| s.as_u64()).unwrap_or(0) as u32;
        if found != SCHEMA_VERSION {
            return Err(WorkbenchError::Schema { found, expected: SCHEMA_VERSION });
        }
        serde_json::from_value(v).map_err(|e| WorkbenchError::Format(e.to_string()))
    }
}

/// Filters for [`Store::list`]; `None` matches everything.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ListFilter {
    pub min_order: Option<i64>,
    pub max_order: Option<i64>,
    pub itype: Option<InvolutionType>,
    pub cyclotomic: Option<bool>,
    pub feasible: Option<bool>,
}

impl ListFilter {
    pub fn matches(&self, e: &CatalogEntry) -> bool {
        self.min_order.is_none_or(|n| e.order >= n)
            && self.max_order.is_none_or(|n| e.order <= n)
            && self.itype.is_none_or(|t| e.itype == Some(t))
            && self.cyclotomic.is_none_or(|c| e.cyclotomic == c)
            && self.feasible.is_none_or(|f| e.feasible == Some(f))
    }
}

/// Append-only JSON-lines catalog, one entry per line.
#[derive(Clone, Debug)]
pub struct Store {
    path: PathBuf,
}

impl Store {
    /// Open `path`, creating an empty store if it does not exist.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, WorkbenchError> {
        let path = path.as_ref().to_path_buf();
        if !path.exists() {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(WorkbenchError::io)?;
            }
            File::create(&path).map_err(WorkbenchError::io)?;
        }
        Ok(Store { path })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Raw lines in insertion order.
    pub fn lines(&self) -> Result<Vec<String>, WorkbenchError> {
        let f = File::open(&self.path).map_err(WorkbenchError::io)?;
        BufReader::new(f).lines().map(|l| l.map_err(WorkbenchError::io)).filter(|l| l.as_ref().map_or(true, |s| !s.trim().is_empty())).collect()
    }

    pub fn entries(&self) -> Result<Vec<CatalogEntry>, WorkbenchError> {
        self.lines()?.iter().map(|l| CatalogEntry::from_line(l)).collect()
    }

    /// Append `entry`. Fails on a repeated digest; a repeated digest with
    /// different matrices signals corruption.
    pub fn insert(&self, entry: &CatalogEntry) -> Result<(), WorkbenchError> {
        if entry.digest != instance_digest(&entry.instance()?) {
            return Err(WorkbenchError::Collision(entry.digest.clone()));
        }
        for e in self.entries()? {
            if e.digest == entry.digest {
                return Err(if e.matrices == entry.matrices { WorkbenchError::Duplicate(e.digest) } else { WorkbenchError::Collision(e.digest) });
            }
        }
        let mut f = OpenOptions::new().append(true).open(&self.path).map_err(WorkbenchError::io)?;
        writeln!(f, "{}", entry.to_line()).map_err(WorkbenchError::io)
    }

    /// Entry with the given digest or digest prefix.
    pub fn load(&self, digest: &str) -> Result<Option<CatalogEntry>, WorkbenchError> {
        let mut hits: Vec<CatalogEntry> = self.entries()?.into_iter().filter(|e| e.digest.starts_with(digest)).collect();
        match hits.len() {
            0 => Ok(None),
            1 => Ok(hits.pop()),
            _ => Err(WorkbenchError::Config(format!("digest prefix `{digest}` is ambiguous"))),
        }
    }

    pub fn list(&self, filter: &ListFilter) -> Result<Vec<CatalogEntry>, WorkbenchError> {
        Ok(self.entries()?.into_iter().filter(|e| filter.matches(e)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feasibility::FeasConfig;
    use crate::workbench::analyze::analyze;
    use crate::workbench::fixtures::{n249, n35};

    fn tmp(name: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("sitawim-catalog-{}-{}", name, std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        dir.join("store.jsonl")
    }

    #[test]
    fn digest_is_permutation_invariant() {
        let a = n35();
        let b = a.permuted(&[0, 1, 2, 4, 3]);
        assert_ne!(a.matrices, b.matrices);
        assert_eq!(instance_digest(&a), instance_digest(&b));
        assert_ne!(instance_digest(&a), instance_digest(&n249()));
    }

    #[test]
    fn insert_load_round_trip() {
        let store = Store::open(tmp("rt")).unwrap();
        assert!(store.list(&ListFilter::default()).unwrap().is_empty());
        let a = analyze(&n249(), &FeasConfig::default()).unwrap();
        let e = CatalogEntry::from_analysis(&a, "fixture:n249");
        store.insert(&e).unwrap();
        let back = store.load(&e.digest[..12]).unwrap().unwrap();
        assert_eq!(back, e);
        assert_eq!(back.matrices, canonical_form(&n249()).matrices);
        // byte-exact: re-serializing the loaded entry reproduces the line
        assert_eq!(store.lines().unwrap(), vec![back.to_line()]);
        assert!(matches!(store.insert(&e), Err(WorkbenchError::Duplicate(_))));
    }

    #[test]
    fn collision_and_schema_errors() {
        let store = Store::open(tmp("bad")).unwrap();
        let a = analyze(&n35(), &FeasConfig::default()).unwrap();
        let mut e = CatalogEntry::from_analysis(&a, "fixture:n35");
        e.digest = "0".repeat(64);
        assert!(matches!(store.insert(&e), Err(WorkbenchError::Collision(_))));
        let mut v: serde_json::Value = serde_json::from_str(&CatalogEntry::from_analysis(&a, "x").to_line()).unwrap();
        v["schema"] = serde_json::json!(99);
        assert!(matches!(CatalogEntry::from_line(&v.to_string()), Err(WorkbenchError::Schema { found: 99, expected: SCHEMA_VERSION })));
    }

    #[test]
    fn list_filters() {
        let store = Store::open(tmp("filter")).unwrap();
        let cfg = FeasConfig::default();
        for (inst, tag) in [(n35(), "n35"), (n249(), "n249")] {
            store.insert(&CatalogEntry::from_analysis(&analyze(&inst, &cfg).unwrap(), tag)).unwrap();
        }
        let all = store.list(&ListFilter::default()).unwrap();
        assert_eq!(all.len(), 2);
        let small = store.list(&ListFilter { max_order: Some(100), ..Default::default() }).unwrap();
        assert_eq!(small.iter().map(|e| e.order).collect::<Vec<_>>(), vec![35]);
        assert_eq!(store.list(&ListFilter { cyclotomic: Some(true), ..Default::default() }).unwrap().len(), 0);
        assert_eq!(store.list(&ListFilter { feasible: Some(true), itype: Some(InvolutionType::S5), ..Default::default() }).unwrap().len(), 2);
    }
}
