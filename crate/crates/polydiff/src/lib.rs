// SPDX-License-Identifier: MIT OR Apache-2.0
//! File formats, verification suites, cohomology tables and the command
//! line on top of `polydiff-core`.

pub mod checks;
pub mod cli;
pub mod error;
pub mod formats;
pub mod par;
pub mod props;
pub mod report;
pub mod tables;

pub use error::{Error, Result};
pub use polydiff_core;
