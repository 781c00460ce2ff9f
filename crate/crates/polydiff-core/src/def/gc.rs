// SPDX-License-Identifier: MIT OR Apache-2.0
//! The full graph complex `fcGC_d = Def(Lie_d → Gra_d)` on connected graphs
//! and its subcomplex `GC_d` of graphs with all valences at least 3.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::gra::insert_graph;
use crate::graph::{OrientedGraph, Vertex};
use crate::linalg::{int, Rational};

/// Linear combination of unlabelled graphs, keyed by canonical forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcElement {
    d: i64,
    terms: BTreeMap<OrientedGraph, Rational>,
}

impl GcElement {
    pub fn zero(d: i64) -> Self {
        GcElement { d, terms: BTreeMap::new() }
    }

    pub fn from_graph(g: &OrientedGraph) -> Self {
        let mut out = GcElement::zero(g.d());
        out.add_graph(g, Rational::one());
        out
    }

    /// Adds `c` times `g`; graphs with an orientation-reversing automorphism vanish.
    pub fn add_graph(&mut self, g: &OrientedGraph, c: Rational) {
        let sc = g.canonicalize();
        if sc.sign == 0 || c.is_zero() {
            return;
        }
        let e = self.terms.entry(sc.canonical.clone()).or_insert_with(Rational::zero);
        *e += c * int(sc.sign as i64);
        if e.is_zero() {
            self.terms.remove(&sc.canonical);
        }
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

    /// Terms in canonical-graph order.
    pub fn terms(&self) -> &BTreeMap<OrientedGraph, Rational> {
        &self.terms
    }

    /// Coefficient of a graph, accounting for its orientation relative to the canonical form.
    pub fn coeff(&self, g: &OrientedGraph) -> Rational {
        let sc = g.canonicalize();
        match self.terms.get(&sc.canonical) {
            Some(c) if sc.sign != 0 => c * int(sc.sign as i64),
            _ => Rational::zero(),
        }
    }

    pub fn add(&self, other: &GcElement) -> GcElement {
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_graph(g, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> GcElement {
        if c.is_zero() {
            return GcElement::zero(self.d);
        }
        GcElement { d: self.d, terms: self.terms.iter().map(|(g, x)| (g.clone(), x * c)).collect() }
    }

    /// Keeps the terms all of whose vertices have valence at least `k`.
    pub fn min_valence_part(&self, k: usize) -> GcElement {
        let terms = self
            .terms
            .iter()
            .filter(|(g, _)| g.valences().iter().all(|&v| v >= k))
            .map(|(g, c)| (g.clone(), c.clone()))
            .collect();
        GcElement { d: self.d, terms }
    }

    /// Keeps the terms with `v` vertices and `e` edges.
    pub fn bidegree_part(&self, v: usize, e: usize) -> GcElement {
        let terms = self
            .terms
            .iter()
            .filter(|(g, _)| g.n_vertices() == v && g.n_edges() == e)
            .map(|(g, c)| (g.clone(), c.clone()))
            .collect();
        GcElement { d: self.d, terms }
    }
}

/// The twist sign of inserting into vertex `v`: `(-1)^{v-1}` for `d` odd.
pub(crate) fn vertex_sign(d: i64, v: usize) -> i64 {
    if d.rem_euclid(2) == 1 && (v - 1) % 2 == 1 {
        -1
    } else {
        1
    }
}

/// The single edge `1 -> 2`.
pub fn edge_graph(d: i64) -> OrientedGraph {
    OrientedGraph::new(d, 2, alloc::vec![(1, 2)]).expect("valid")
}

/// `Γ ∘_v edge` with vertex `v` keeping every edge: a univalent vertex
/// attached to `v`, with the orientation of that splitting term.
pub fn univalent_attachment(g: &OrientedGraph, v: usize) -> OrientedGraph {
    let n = g.n_vertices() as Vertex;
    let vv = v as Vertex;
    let shift = |u: Vertex| if u <= vv { u } else { u + 1 };
    let mut edges: Vec<(Vertex, Vertex)> = g.edges().iter().map(|&(t, h)| (shift(t), shift(h))).collect();
    edges.push((vv, vv + 1));
    OrientedGraph::new(g.d(), n as usize + 1, edges).expect("valid")
}

/// `δ(Γ) = -2 Σ_v (univalent attachment at v) + Σ_v Γ ∘_v edge`, where the
/// insertion at `v` carries the sign `(-1)^{v-1}` for `d` odd.
pub fn gc_differential(g: &OrientedGraph) -> GcElement {
    let d = g.d();
    let edge = edge_graph(d);
    let mut out = GcElement::zero(d);
    for v in 1..=g.n_vertices() {
        let s = vertex_sign(d, v);
        out.add_graph(&univalent_attachment(g, v), int(-2 * s));
        for t in insert_graph(g, v, &edge) {
            out.add_graph(&t, int(s));
        }
    }
    out
}

/// Linear extension of [`gc_differential`].
pub fn gc_differential_el(x: &GcElement) -> GcElement {
    let mut out = GcElement::zero(x.d());
    for (g, c) in x.terms() {
        out = out.add(&gc_differential(g).scale(c));
    }
    out
}

/// The differential of `GC_d`: `δ` followed by the projection to graphs
/// with all valences at least 3.
pub fn gc_projected_differential(x: &GcElement) -> GcElement {
    gc_differential_el(&x.min_valence_part(3)).min_valence_part(3)
}

/// The Def bracket `[edge, Γ]`: `Σ_s ε_s edge ∘_s Γ - (-1)^{|Γ|} Σ_v ε_v Γ ∘_v edge`
/// with `ε_s = (-1)^{(s-1)(n+1)}` and `ε_v = (-1)^{v-1}` for `d` odd.
pub fn bracket_differential(g: &OrientedGraph) -> GcElement {
    let d = g.d();
    let n = g.n_vertices();
    let edge = edge_graph(d);
    let mut out = GcElement::zero(d);
    for s in 1..=2usize {
        let e = if d.rem_euclid(2) == 1 && ((s - 1) * (n + 1)) % 2 == 1 { -1 } else { 1 };
        for t in insert_graph(&edge, s, g) {
            out.add_graph(&t, int(e));
        }
    }
    let outer = if g.degree().rem_euclid(2) == 0 { -1 } else { 1 };
    for v in 1..=n {
        let e = outer * vertex_sign(d, v);
        for t in insert_graph(g, v, &edge) {
            out.add_graph(&t, int(e));
        }
    }
    out
}
