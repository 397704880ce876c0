//! Dataset records shared by all three domains, with splitting, noun
//! perturbation and JSONL/TSV plumbing.

mod io;
mod nouns;
mod split;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::{fol, ltl, regex};

pub use io::{read_jsonl, read_tsv_pairs, write_jsonl};
pub use nouns::{noun_pool, substitute_nouns};
pub use split::{make_split, Split, SplitSpec};

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Schema { line: usize, msg: String },
    #[error("line {line}: expected 2 tab-separated columns, found {found}")]
    Columns { line: usize, found: usize },
    #[error("alignment: {0}")]
    Alignment(String),
    #[error("invalid split ratios: {0}")]
    Ratios(String),
    #[error("record {id}: {msg}")]
    InvalidRecord { id: String, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Regex,
    Fol,
    Ltl,
}

impl Domain {
    pub fn as_str(self) -> &'static str {
        match self {
            Domain::Regex => "regex",
            Domain::Fol => "fol",
            Domain::Ltl => "ltl",
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Domain {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "regex" => Ok(Domain::Regex),
            "fol" => Ok(Domain::Fol),
            "ltl" => Ok(Domain::Ltl),
            other => Err(format!("unknown domain {other:?} (expected regex, fol or ltl)")),
        }
    }
}

/// One natural-language / formal-target pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetRecord {
    pub id: String,
    pub domain: Domain,
    pub nl: String,
    pub target: String,
    #[serde(default)]
    pub meta: BTreeMap<String, Value>,
}

impl DatasetRecord {
    /// Builds a record whose id is the content hash of its fields.
    pub fn new(
        domain: Domain,
        nl: impl Into<String>,
        target: impl Into<String>,
        meta: BTreeMap<String, Value>,
    ) -> Self {
        let nl = nl.into();
        let target = target.into();
        DatasetRecord { id: content_id(domain, &nl, &target), domain, nl, target, meta }
    }

    /// Recomputes the id after `nl` or `target` changed.
    pub fn rehash(&mut self) {
        self.id = content_id(self.domain, &self.nl, &self.target);
    }

    /// Checks that the sentence is non-empty and the target parses.
    pub fn validate(&self) -> Result<(), DatasetError> {
        let bad = |msg: String| DatasetError::InvalidRecord { id: self.id.clone(), msg };
        if self.nl.trim().is_empty() {
            return Err(bad("empty sentence".into()));
        }
        match self.domain {
            Domain::Regex => regex::parse_regex(&self.target).map(drop).map_err(|e| bad(e.to_string())),
            Domain::Ltl => ltl::parse_ltl(&self.target).map(drop).map_err(|e| bad(e.to_string())),
            Domain::Fol => fol::parse_fol(&self.target)
                .map(drop)
                .or_else(|_| fol::parse_fol_formula(&self.target).map(drop))
                .map_err(|e| bad(e.to_string())),
        }
    }
}

/// First 16 hex digits of SHA-256 over the domain, sentence and target.
pub fn content_id(domain: Domain, nl: &str, target: &str) -> String {
    let mut h = Sha256::new();
    for part in [domain.as_str(), nl, target] {
        h.update(part.as_bytes());
        h.update([0u8]);
    }
    hex::encode(&h.finalize()[..8])
}

/// Drops records whose `(nl, target)` pair was already seen, keeping order.
pub fn dedup(records: Vec<DatasetRecord>) -> Vec<DatasetRecord> {
    let mut seen = HashSet::new();
    records.into_iter().filter(|r| seen.insert((r.nl.clone(), r.target.clone()))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_depend_on_content_only() {
        let a = DatasetRecord::new(Domain::Ltl, "a holds", "a", BTreeMap::new());
        let mut meta = BTreeMap::new();
        meta.insert("seed".to_string(), Value::from(3));
        let b = DatasetRecord::new(Domain::Ltl, "a holds", "a", meta);
        assert_eq!(a.id, b.id);
        assert_eq!(a.id.len(), 16);
        assert_ne!(a.id, DatasetRecord::new(Domain::Regex, "a holds", "a", BTreeMap::new()).id);
    }

    #[test]
    fn validation() {
        assert!(DatasetRecord::new(Domain::Ltl, "x", "G a", BTreeMap::new()).validate().is_ok());
        assert!(DatasetRecord::new(Domain::Ltl, "x", "G (", BTreeMap::new()).validate().is_err());
        assert!(DatasetRecord::new(Domain::Regex, " ", "a", BTreeMap::new()).validate().is_err());
        assert!(DatasetRecord::new(Domain::Fol, "x", "fol(1,p(A)).", BTreeMap::new()).validate().is_ok());
    }

    #[test]
    fn dedup_keeps_first() {
        let r = |nl: &str, t: &str, s: i64| {
            let mut meta = BTreeMap::new();
            meta.insert("seed".to_string(), Value::from(s));
            DatasetRecord::new(Domain::Ltl, nl, t, meta)
        };
        let out = dedup(vec![r("a holds", "a", 1), r("b holds", "b", 2), r("a holds", "a", 3)]);
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].meta["seed"], Value::from(1));
    }

    #[test]
    fn domain_names() {
        for d in [Domain::Regex, Domain::Fol, Domain::Ltl] {
            assert_eq!(d.as_str().parse::<Domain>().unwrap(), d);
            assert_eq!(serde_json::to_string(&d).unwrap(), format!("\"{d}\""));
        }
        assert!("sql".parse::<Domain>().is_err());
    }
}
