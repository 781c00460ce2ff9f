// SPDX-License-Identifier: MIT OR Apache-2.0
//! The graph operad `Gra_d`: linear combinations of graphs with labelled
//! vertices, partial compositions and the symmetric group actions.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{OrientedGraph, Vertex};
use crate::linalg::{int, Rational};

/// Element of `Gra_d(arity)`, keyed by labelled normal forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraElement {
    arity: usize,
    d: i64,
    terms: BTreeMap<Vec<(Vertex, Vertex)>, Rational>,
}

impl GraElement {
    pub fn zero(arity: usize, d: i64) -> Self {
        GraElement { arity, d, terms: BTreeMap::new() }
    }

    /// The single-vertex graph, the operad unit.
    pub fn unit(d: i64) -> Self {
        Self::from_graph(&OrientedGraph::new(d, 1, Vec::new()).expect("valid"), Rational::one())
    }

    /// `c` times a single graph, brought to normal form.
    pub fn from_graph(g: &OrientedGraph, c: Rational) -> Self {
        let mut out = GraElement::zero(g.n_vertices(), g.d());
        out.add_graph(g, c);
        out
    }

    /// Adds `c` times a graph of the same arity.
    pub fn add_graph(&mut self, g: &OrientedGraph, c: Rational) {
        debug_assert_eq!(g.n_vertices(), self.arity);
        let (nf, s) = g.labeled_normal_form();
        if s == 0 || c.is_zero() {
            return;
        }
        let key = nf.edges().to_vec();
        let e = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *e += c * int(s as i64);
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as (normal-form graph, coefficient), in key order.
    pub fn terms(&self) -> impl Iterator<Item = (OrientedGraph, &Rational)> + '_ {
        self.terms.iter().map(|(e, c)| (OrientedGraph::new(self.d, self.arity, e.clone()).expect("valid"), c))
    }

    /// Coefficient of a graph, accounting for its normal-form sign.
    pub fn coeff(&self, g: &OrientedGraph) -> Rational {
        let (nf, s) = g.labeled_normal_form();
        match self.terms.get(nf.edges()) {
            Some(c) if s != 0 => c * int(s as i64),
            _ => Rational::zero(),
        }
    }

    pub fn add(&self, other: &GraElement) -> GraElement {
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_graph(&g, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> GraElement {
        if c.is_zero() {
            return GraElement::zero(self.arity, self.d);
        }
        let terms = self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect();
        GraElement { arity: self.arity, d: self.d, terms }
    }

    /// Keeps only connected terms.
    pub fn connected_part(&self) -> GraElement {
        let mut out = GraElement::zero(self.arity, self.d);
        for (g, c) in self.terms() {
            if g.is_connected() {
                out.add_graph(&g, c.clone());
            }
        }
        out
    }

    /// Partial composition `self ∘_i other`.
    pub fn compose(&self, i: usize, other: &GraElement) -> Result<GraElement> {
        if i == 0 || i > self.arity {
            return Err(Error::IndexOutOfRange { index: i, bound: self.arity });
        }
        let n2 = other.arity;
        let mut out = GraElement::zero(self.arity + n2 - 1, self.d);
        for (g1, c1) in self.terms() {
            for (g2, c2) in other.terms() {
                for g in insert_graph(&g1, i, &g2) {
                    out.add_graph(&g, c1 * c2);
                }
            }
        }
        Ok(out)
    }

    /// Relabels vertices: vertex `k` becomes `perm[k-1]`.
    pub fn s_action(&self, perm: &[Vertex]) -> Result<GraElement> {
        let mut out = GraElement::zero(self.arity, self.d);
        for (g, c) in self.terms() {
            out.add_graph(&g.relabel(perm)?, c.clone());
        }
        Ok(out)
    }
}

/// Every graph of `g1 ∘_i g2` before normal forms, all with coefficient 1.
///
/// Edges at vertex `i` are redistributed over all vertices of `g2`; the
/// vertices of `g2` take labels `i..i+n2-1`; edges of `g2` follow those of `g1`.
pub fn insert_graph(g1: &OrientedGraph, i: usize, g2: &OrientedGraph) -> Vec<OrientedGraph> {
    let n1 = g1.n_vertices();
    let n2 = g2.n_vertices();
    let iv = i as Vertex;
    let shift = |u: Vertex| -> Vertex {
        if u < iv {
            u
        } else {
            u + n2 as Vertex - 1
        }
    };
    // Half-edges at vertex i: (edge index, true if the tail is at i).
    let ends: Vec<(usize, bool)> = g1
        .edges()
        .iter()
        .enumerate()
        .filter_map(|(k, &(t, h))| {
            if t == iv {
                Some((k, true))
            } else if h == iv {
                Some((k, false))
            } else {
                None
            }
        })
        .collect();
    let g2_edges: Vec<(Vertex, Vertex)> = g2.edges().iter().map(|&(t, h)| (t + iv - 1, h + iv - 1)).collect();
    let mut out = Vec::new();
    let total = (n2 as u64).pow(ends.len() as u32);
    for code in 0..total {
        let mut c = code;
        let mut edges: Vec<(Vertex, Vertex)> = g1.edges().iter().map(|&(t, h)| (shift(t), shift(h))).collect();
        for &(k, tail) in &ends {
            let w = iv + (c % n2 as u64) as Vertex;
            c /= n2 as u64;
            if tail {
                edges[k].0 = w;
            } else {
                edges[k].1 = w;
            }
        }
        edges.extend_from_slice(&g2_edges);
        out.push(OrientedGraph::new(g1.d(), n1 + n2 - 1, edges).expect("composition creates no tadpoles"));
    }
    out
}

/// The image of the bracket: the edge `1 -> 2` (the direction matters only for odd `d`).
pub fn lie_to_gra(d: i64) -> GraElement {
    GraElement::from_graph(&OrientedGraph::new(d, 2, alloc::vec![(1, 2)]).expect("valid"), Rational::one())
}
