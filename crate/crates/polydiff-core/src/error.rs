// SPDX-License-Identifier: MIT OR Apache-2.0
//! Error type shared by all modules of the core crate.

use alloc::string::String;

/// Failure of a core operation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("inconsistent leaf sets in a linear combination of bracket words")]
    InconsistentLeaves,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{what} = {requested} exceeds the limit {limit}")]
    BoundExceeded { what: &'static str, limit: usize, requested: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
