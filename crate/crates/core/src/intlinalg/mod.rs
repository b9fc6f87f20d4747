//! Exact integer matrices, Smith normal form with unimodular certificates,
//! and membership in the integer column span of a matrix.
//!
//! Every entry is a [`BigInt`](num_bigint::BigInt); nothing in this module
//! uses fixed-width arithmetic on matrix entries.

mod matrix;
mod snf;
mod text;

pub use matrix::IntMatrix;
pub use snf::{intcol_membership, snf, SnfResult};
pub(crate) use snf::membership_with;
pub use text::ParseMatrixError;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("matrix dimensions {rows}x{cols} are too large")]
    Capacity { rows: usize, cols: usize },
}
