//! Stable JSON form of a decomposition.
//!
//! Field order is fixed by the struct layout. Arbitrary-precision integers
//! are decimal strings; generators use the backend's display syntax.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Decomposition, Summand};
use crate::groups::{AbelianGroup, GroupError};

#[derive(Debug, Error)]
pub enum RecordError {
    #[error("malformed decomposition record: {0}")]
    Json(#[from] serde_json::Error),
    #[error("record describes `{found}` but the group is `{expected}`")]
    GroupMismatch { expected: String, found: String },
    #[error("`{0}` is not a non-negative decimal integer")]
    Integer(String),
    #[error(transparent)]
    Element(#[from] GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummandRecord {
    pub generator: String,
    pub prime: String,
    pub exponent: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionRecord {
    pub group: String,
    pub seed: u64,
    pub margin_c: u64,
    pub k: u64,
    pub group_order: String,
    pub summands: Vec<SummandRecord>,
}

fn parse_decimal(s: &str) -> Result<BigUint, RecordError> {
    let canonical = !s.is_empty()
        && s.bytes().all(|b| b.is_ascii_digit())
        && (s == "0" || !s.starts_with('0'));
    if !canonical {
        return Err(RecordError::Integer(s.to_string()));
    }
    s.parse().map_err(|_| RecordError::Integer(s.to_string()))
}

impl DecompositionRecord {
    pub fn from_decomposition(group: &dyn AbelianGroup, dec: &Decomposition) -> Self {
        DecompositionRecord {
            group: group.descriptor(),
            seed: dec.seed,
            margin_c: dec.margin_c,
            k: dec.k,
            group_order: dec.group_order.to_string(),
            summands: dec
                .summands
                .iter()
                .map(|s| SummandRecord {
                    generator: group.display(&s.generator),
                    prime: s.prime.to_string(),
                    exponent: s.exponent,
                })
                .collect(),
        }
    }

    /// Rebuilds a [`Decomposition`] against `group`. Only syntax is checked
    /// here; use [`super::verify_decomposition`] for the mathematics.
    pub fn to_decomposition(&self, group: &dyn AbelianGroup) -> Result<Decomposition, RecordError> {
        if self.group != group.descriptor() {
            return Err(RecordError::GroupMismatch {
                expected: group.descriptor(),
                found: self.group.clone(),
            });
        }
        let summands = self
            .summands
            .iter()
            .map(|s| {
                Ok(Summand {
                    generator: group.parse_element(&s.generator)?,
                    prime: parse_decimal(&s.prime)?,
                    exponent: s.exponent,
                })
            })
            .collect::<Result<Vec<_>, RecordError>>()?;
        Ok(Decomposition {
            summands,
            group_order: parse_decimal(&self.group_order)?,
            seed: self.seed,
            margin_c: self.margin_c,
            k: self.k,
            attempts: 1,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("record serialization is infallible");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, RecordError> {
        Ok(serde_json::from_str(s)?)
    }
}
