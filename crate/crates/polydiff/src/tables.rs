// SPDX-License-Identifier: MIT OR Apache-2.0
//! Cohomology tables over ranges of bidegree slices.

use std::collections::BTreeMap;

use polydiff_core::def::{
    bidegree_label, build_slice, Bidegree, Complex, ComplexId, DefLie, DefOc, GcElement, GraphComplex,
    DEF_LIE_MAX_ARITY, DEF_MAX_ARITY, DEF_MAX_INTERNAL, GC_MAX_EDGES, GC_MAX_VERTICES,
};
use polydiff_core::lie::LieElement;
use polydiff_core::linalg::{kernel_basis, rank, Echelon, Rational};
use polydiff_core::poly::OElement;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::formats::{to_versioned, GcJson, LieJson, OJson};
use crate::par::par_map;

/// One row of a table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub complex: String,
    pub d: i64,
    pub bidegree: String,
    pub degree: i64,
    pub basis_dim: usize,
    pub kernel_dim: usize,
    pub image_dim: usize,
    pub cohomology_dim: usize,
    /// Cocycles spanning a complement of the coboundaries.
    pub witnesses: Vec<Value>,
}

/// A class `K[d-p]` of the loop summand, bookkept by formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopClass {
    pub p: usize,
    pub bidegree: String,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub complex: String,
    pub d: i64,
    pub rows: Vec<Row>,
    /// Loop classes `⊕_{p ≡ 2d+1 mod 4} K[d-p]` within the vertex range,
    /// which together with `gc` account for `fcgc`.
    pub loop_classes: Vec<LoopClass>,
}

/// Slice selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Range {
    /// All slices with the first index `≤ max.0` and the second `≤ max.1`.
    UpTo(usize, usize),
    /// A single slice.
    Single(Bidegree),
}

/// Parses `"v,e"` or `"(v,e)"`.
pub fn parse_slice(s: &str) -> Result<Bidegree> {
    let t = s.trim().trim_start_matches('(').trim_end_matches(')');
    let bad = || Error::Usage(format!("slice must look like 4,6, got {s:?}"));
    let (a, b) = t.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn limit(what: &str, requested: usize, max: usize) -> Result<()> {
    if requested > max {
        Err(Error::Usage(format!("{what} = {requested} exceeds the limit {max} (the next slice must stay within bounds)")))
    } else {
        Ok(())
    }
}

/// Bidegrees of a range, checked so that every successor slice is in bounds.
pub fn slices(id: ComplexId, range: Range) -> Result<Vec<Bidegree>> {
    let (m0, m1) = match range {
        Range::UpTo(a, b) => (a, b),
        Range::Single(b) => b,
    };
    let (l0, l1, w0, w1) = match id {
        ComplexId::FcGc(_) | ComplexId::Gc(_) => (GC_MAX_VERTICES - 1, GC_MAX_EDGES - 1, "vertices", "edges"),
        ComplexId::DefOc(_) => (DEF_MAX_ARITY - 1, DEF_MAX_INTERNAL - 1, "arity", "internal vertices"),
        ComplexId::DefLie(_) => (DEF_LIE_MAX_ARITY - 1, DEF_LIE_MAX_ARITY - 2, "arity", "internal vertices"),
    };
    limit(w0, m0, l0)?;
    limit(w1, m1, l1)?;
    Ok(match range {
        Range::Single(b) => vec![b],
        Range::UpTo(a, b) => {
            let mut out = Vec::new();
            for x in 2..=a {
                match id {
                    ComplexId::FcGc(_) | ComplexId::Gc(_) => out.extend((x - 1..=b).map(|e| (x, e))),
                    ComplexId::DefOc(_) => out.extend((0..=b).map(|k| (x, k))),
                    ComplexId::DefLie(_) => {
                        if x - 1 <= b {
                            out.push((x, x - 1))
                        }
                    }
                }
            }
            out
        }
    })
}

/// Ranks and witnesses of one slice. `combine` forms a linear combination
/// of basis elements and `serialize` writes it in the module format.
fn row<C, F, S>(c: &C, b: Bidegree, combine: F, serialize: S) -> Result<Row>
where
    C: Complex,
    F: Fn(&[(Rational, &C::Elem)]) -> C::Elem,
    S: Fn(&C::Elem) -> Value,
{
    let s = build_slice(c, b)?;
    let dim = s.basis.len();
    let kernel = kernel_basis(&s.differential);
    let mut index: BTreeMap<C::Key, usize> = BTreeMap::new();
    let mut key = |k: C::Key| {
        let n = index.len();
        *index.entry(k).or_insert(n)
    };
    let mut e = Echelon::new();
    let mut image = 0;
    if b.0 >= 1 && b.1 >= 1 {
        let p = build_slice(c, (b.0 - 1, b.1 - 1))?;
        image = rank(&p.differential);
        let keys: Vec<usize> = p.target_keys.iter().cloned().map(&mut key).collect();
        for col in p.differential.columns() {
            e.insert(&col.iter().map(|(i, x)| (keys[*i], x.clone())).collect::<Vec<_>>());
        }
    }
    let mut witnesses = Vec::new();
    for v in &kernel {
        let parts: Vec<(Rational, &C::Elem)> = v.iter().map(|(j, x)| (x.clone(), &s.basis[*j])).collect();
        let z = combine(&parts);
        let coords: Vec<(usize, Rational)> = c.coords(&z).into_iter().map(|(k, x)| (key(k), x)).collect();
        if e.insert(&coords).is_some() {
            witnesses.push(serialize(&z));
        }
    }
    let id = c.id();
    let cohomology = kernel.len() - image;
    if witnesses.len() != cohomology {
        return Err(Error::Format(format!("{id} {}: {} witnesses for rank {cohomology}", bidegree_label(b), witnesses.len())));
    }
    Ok(Row {
        complex: id.name().into(),
        d: id.d(),
        bidegree: bidegree_label(b),
        degree: c.degree(b),
        basis_dim: dim,
        kernel_dim: kernel.len(),
        image_dim: image,
        cohomology_dim: cohomology,
        witnesses,
    })
}

fn gc_combine(d: i64) -> impl Fn(&[(Rational, &GcElement)]) -> GcElement {
    move |parts| parts.iter().fold(GcElement::zero(d), |acc, (x, g)| acc.add(&g.scale(x)))
}

fn collect(rows: Vec<Result<Row>>) -> Result<Vec<Row>> {
    rows.into_iter().collect()
}

/// Loop classes with `1 ≤ p ≤ max_p`.
pub fn loop_classes(d: i64, max_p: usize) -> Vec<LoopClass> {
    (1..=max_p)
        .filter(|&p| (p as i64 - (2 * d + 1)).rem_euclid(4) == 0)
        .map(|p| LoopClass { p, bidegree: bidegree_label((p, p)), degree: p as i64 - d })
        .collect()
}

/// Builds the table of a complex over a range, slices in parallel.
pub fn table(id: ComplexId, range: Range) -> Result<Table> {
    let bs = slices(id, range)?;
    let d = id.d();
    let rows = match id {
        ComplexId::FcGc(_) | ComplexId::Gc(_) => {
            let c = if matches!(id, ComplexId::Gc(_)) { GraphComplex::gc(d) } else { GraphComplex::fcgc(d) };
            collect(par_map(bs.clone(), |b| {
                row(&c, b, gc_combine(d), |x| serde_json::to_value(GcJson::from_element(x)).expect("serializable"))
            }))?
        }
        ComplexId::DefOc(_) => {
            let combine = |parts: &[(Rational, &OElement)]| {
                let n = parts.first().map_or(0, |p| p.1.arity());
                parts.iter().fold(OElement::zero(n, d), |acc, (x, g)| acc.add(&g.scale(x)))
            };
            // The operad caches are per thread.
            collect(par_map(bs.clone(), |b| {
                let c = DefOc::new(d);
                row(&c, b, combine, |x| serde_json::to_value(OJson::from_element(c.operad(), x)).expect("serializable"))
            }))?
        }
        ComplexId::DefLie(_) => {
            let c = DefLie::new(d);
            let combine = |parts: &[(Rational, &LieElement)]| {
                let n = parts.first().map_or(0, |p| p.1.arity());
                parts.iter().fold(LieElement::zero(n, d), |acc, (x, g)| acc.add(&g.scale(x)))
            };
            collect(par_map(bs.clone(), |b| {
                row(&c, b, combine, |x| serde_json::to_value(LieJson::from_element(x)).expect("serializable"))
            }))?
        }
    };
    let loops = match id {
        ComplexId::Gc(_) | ComplexId::DefOc(_) => {
            let max_p = bs.iter().filter(|b| b.0 == b.1).map(|b| b.0).max().unwrap_or(0);
            loop_classes(d, max_p)
        }
        _ => Vec::new(),
    };
    Ok(Table { complex: id.name().into(), d, rows, loop_classes: loops })
}

impl Table {
    pub fn total_cohomology(&self) -> usize {
        self.rows.iter().map(|r| r.cohomology_dim).sum()
    }

    /// CSV with one row per slice, then one row per loop class under the
    /// complex name `gc2`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["complex", "d", "bidegree", "basis_dim", "kernel_dim", "image_dim", "cohomology_dim"])?;
        for r in &self.rows {
            w.write_record([
                r.complex.clone(),
                r.d.to_string(),
                r.bidegree.clone(),
                r.basis_dim.to_string(),
                r.kernel_dim.to_string(),
                r.image_dim.to_string(),
                r.cohomology_dim.to_string(),
            ])?;
        }
        for l in &self.loop_classes {
            w.write_record(["gc2".into(), self.d.to_string(), l.bidegree.clone(), "1".into(), "1".into(), "0".into(), "1".into()])?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(to_versioned(self)? + "\n")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} d={}\n", self.complex, self.d);
        s.push_str(&format!("{:<10} {:>6} {:>6} {:>6} {:>6} {:>6}\n", "bidegree", "degree", "dim", "ker", "im", "H"));
        for r in &self.rows {
            s.push_str(&format!(
                "{:<10} {:>6} {:>6} {:>6} {:>6} {:>6}\n",
                r.bidegree, r.degree, r.basis_dim, r.kernel_dim, r.image_dim, r.cohomology_dim
            ));
        }
        for l in &self.loop_classes {
            s.push_str(&format!("loop p={} {} degree {}\n", l.p, l.bidegree, l.degree));
        }
        s.push_str(&format!("total {}\n", self.total_cohomology()));
        s
    }
}
