//! JSON network documents.
//!
//! Reaction indices are 0-based positions in `complexes`. Rates are written
//! with the shortest representation that parses back to the same `f64`.

use std::collections::BTreeMap;

use crn_realize_core::{ComplexVector, CrnError, KirchhoffMatrix, ReactionNetwork, StoichMatrix};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkDocument {
    pub species: Vec<String>,
    pub complexes: Vec<Vec<u32>>,
    /// `[source, target, rate]`
    pub reactions: Vec<(usize, usize, f64)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, Value>,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("complex {index} has {found} coefficients, expected {expected}")]
    ComplexLength {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("reaction {index}: {source}")]
    Reaction { index: usize, source: CrnError },
    #[error(transparent)]
    Network(#[from] CrnError),
}

impl NetworkDocument {
    pub fn from_network(net: &ReactionNetwork) -> Self {
        Self {
            species: net.species_names().to_vec(),
            complexes: net
                .complexes()
                .complexes()
                .iter()
                .map(|c| c.coefficients().to_vec())
                .collect(),
            reactions: net.kirchhoff().reactions(),
            metadata: BTreeMap::new(),
        }
    }

    pub fn to_network(&self) -> Result<ReactionNetwork, DocumentError> {
        let n = self.species.len();
        for (index, c) in self.complexes.iter().enumerate() {
            if c.len() != n {
                return Err(DocumentError::ComplexLength {
                    index,
                    expected: n,
                    found: c.len(),
                });
            }
        }
        let m = self.complexes.len();
        for (index, &reaction) in self.reactions.iter().enumerate() {
            KirchhoffMatrix::from_rates(m, [reaction])
                .map_err(|source| DocumentError::Reaction { index, source })?;
        }
        let y = StoichMatrix::new(
            n,
            self.complexes.iter().cloned().map(ComplexVector::new).collect(),
        )?;
        let a = KirchhoffMatrix::from_rates(m, self.reactions.iter().copied())?;
        Ok(ReactionNetwork::new(self.species.clone(), y, a)?)
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("documents always serialize");
        out.push('\n');
        out
    }
}

pub fn parse_network(text: &str) -> Result<ReactionNetwork, DocumentError> {
    NetworkDocument::parse(text)?.to_network()
}

pub fn serialize_network(net: &ReactionNetwork) -> String {
    NetworkDocument::from_network(net).to_json()
}
