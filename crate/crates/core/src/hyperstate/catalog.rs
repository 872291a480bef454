//! Named reference states.
//!
//! A catalog file holds one JSON object per line:
//!
//! ```text
//! {"name":"G17","hypergraph":{"n":4,"edges":[[1,2,3,4]]},"expected":{"mu":1.43329}}
//! {"name":"G7","signs":[1,1,1,1,1,-1,...],"expected":{"singular":"4A1"}}
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperstate::{build_hypergraph_state, hypergraph_signs, infer_hypergraph, state_from_signs, Hypergraph, StateVector};
use crate::scalar::Real;

const DEFAULT_CATALOG: &str = include_str!("../../data/catalog.jsonl");

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_tilde: Option<f64>,
    /// Singularity descriptor such as `"Smooth"` or `"6A1"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub singular: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypergraph: Option<Hypergraph>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signs: Option<Vec<i8>>,
    #[serde(default)]
    pub expected: Expected,
}

impl CatalogEntry {
    fn validate(&self) -> std::result::Result<(), String> {
        match (&self.hypergraph, &self.signs) {
            (None, None) => Err("entry needs `hypergraph` or `signs`".into()),
            (Some(g), Some(signs)) => {
                if &hypergraph_signs(g) != signs {
                    Err("`hypergraph` and `signs` disagree".into())
                } else {
                    Ok(())
                }
            }
            (None, Some(signs)) => state_from_signs::<f64>(signs)
                .and_then(|s| infer_hypergraph(&s))
                .map(|_| ())
                .map_err(|e| e.to_string()),
            (Some(_), None) => Ok(()),
        }
    }

    /// Edge set, inferred from the sign vector when only signs are stored.
    pub fn hypergraph(&self) -> Result<Hypergraph> {
        match (&self.hypergraph, &self.signs) {
            (Some(g), _) => Ok(g.clone()),
            (None, Some(signs)) => infer_hypergraph(&state_from_signs::<f64>(signs)?),
            (None, None) => Err(Error::InvalidConfig(format!("entry {} has no definition", self.name))),
        }
    }

    pub fn state<T: Real>(&self) -> Result<StateVector<T>> {
        match (&self.hypergraph, &self.signs) {
            (Some(g), _) => build_hypergraph_state(g),
            (None, Some(signs)) => state_from_signs(signs),
            (None, None) => Err(Error::InvalidConfig(format!("entry {} has no definition", self.name))),
        }
    }

    pub fn n(&self) -> usize {
        match (&self.hypergraph, &self.signs) {
            (Some(g), _) => g.n(),
            (None, Some(s)) => s.len().trailing_zeros() as usize,
            (None, None) => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: Vec<CatalogEntry> = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let entry: CatalogEntry = serde_json::from_str(trimmed).map_err(|e| Error::Catalog {
                line: line_no,
                msg: e.to_string(),
            })?;
            entry
                .validate()
                .map_err(|msg| Error::Catalog { line: line_no, msg })?;
            if entries.iter().any(|e| e.name == entry.name) {
                return Err(Error::Catalog {
                    line: line_no,
                    msg: format!("duplicate name {:?}", entry.name),
                });
            }
            entries.push(entry);
        }
        Ok(Self { entries })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// The catalog shipped with the crate.
    pub fn builtin() -> Self {
        Self::parse(DEFAULT_CATALOG).expect("bundled catalog parses")
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Result<&CatalogEntry> {
        self.entries
            .iter()
            .find(|e| e.name.eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::UnknownEntry(name.to_string()))
    }

    pub fn to_jsonl(&self) -> String {
        self.entries
            .iter()
            .map(|e| serde_json::to_string(e).expect("entry serializes") + "\n")
            .collect()
    }
}
