// SPDX-License-Identifier: MIT OR Apache-2.0
//! Exact algebra for the graph operads `Gra_d`, the polydifferential operads
//! `O(Lie_d)`, Kontsevich graph complexes, deformation complexes and the
//! PBW star product.
#![no_std]
extern crate alloc;

pub mod error;
pub mod gra;
pub mod gutt;
pub mod graph;
pub mod lie;
pub mod linalg;
pub mod poly;
pub mod def;

pub use error::{Error, Result};
