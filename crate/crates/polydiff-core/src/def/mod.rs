// SPDX-License-Identifier: MIT OR Apache-2.0
//! Deformation complexes `Def(Lie_d → P)` for `P = Lie_d` and
//! `P = O_c(Lie_d)`, the graph complexes `fcGC_d ⊃ GC_d`, the map `F`
//! between them, finite bidegree slices and their cohomology ranks.
//!
//! Gradings: a graph with `v` vertices and `e` edges has degree
//! `d(v-1) + (1-d)e`; an element of arity `n` whose components have
//! `m_j` slots has degree `d(n-1) + Σ_j (m_j - 1)(1-d)`. A two-slot
//! component plays the role of an edge, so `F` preserves degree, theta has
//! degree 1 for `d = 1` and the tetrahedron degree 0 for `d = 2`.
//!
//! Arity 1 is left out of every complex: slices start at `n = 2` and `v = 2`.

pub mod gc;
pub mod oc;
pub mod lie;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;


use crate::error::{Error, Result};
use crate::graph::{enumerate_graphs, OrientedGraph};
use crate::linalg::{int, rank, Echelon, Rational, SparseMatrix};

pub use gc::{
    bracket_differential, edge_graph, gc_differential, gc_differential_el, gc_projected_differential,
    univalent_attachment, GcElement,
};
pub use lie::DefLie;
pub use oc::DefOc;

/// Graph complex limits accepted by [`build_slice`].
pub const GC_MAX_VERTICES: usize = 7;
pub const GC_MAX_EDGES: usize = 12;
/// `Def(Lie_d → O_c(Lie_d))` limits on arity and internal vertices.
pub const DEF_MAX_ARITY: usize = 4;
pub const DEF_MAX_INTERNAL: usize = 4;
/// `Def(Lie_d → Lie_d)` arity limit.
pub const DEF_LIE_MAX_ARITY: usize = 6;

/// Which complex a slice belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComplexId {
    /// `fcGC_d`: connected graphs, all valences at least 1.
    FcGc(i64),
    /// `GC_d`: connected graphs, all valences at least 3, projected differential.
    Gc(i64),
    /// `Def(Lie_d → Lie_d)`, bidegree `(n, n-1)`.
    DefLie(i64),
    /// `Def(Lie_d → O_c(Lie_d))`, bidegree (arity, internal vertices).
    DefOc(i64),
}

impl ComplexId {
    pub fn d(&self) -> i64 {
        match *self {
            ComplexId::FcGc(d) | ComplexId::Gc(d) | ComplexId::DefLie(d) | ComplexId::DefOc(d) => d,
        }
    }

    /// Short name used in tables and on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            ComplexId::FcGc(_) => "fcgc",
            ComplexId::Gc(_) => "gc",
            ComplexId::DefLie(_) => "def-lie-lie",
            ComplexId::DefOc(_) => "def-lie-oc",
        }
    }
}

impl fmt::Display for ComplexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// `(v, e)` for graph complexes, `(n, k)` for deformation complexes.
pub type Bidegree = (usize, usize);

/// A cochain complex graded by bidegrees, with `δ` of bidegree `(1, 1)`.
pub trait Complex {
    type Elem: Clone;
    type Key: Ord + Clone;

    fn id(&self) -> ComplexId;

    /// Fails with `BoundExceeded` outside the enumeration limits.
    fn check_bidegree(&self, b: Bidegree) -> Result<()>;

    fn degree(&self, b: Bidegree) -> i64;

    /// A basis of the slice, deterministic in order.
    fn basis(&self, b: Bidegree) -> Result<Vec<Self::Elem>>;

    fn differential(&self, x: &Self::Elem) -> Self::Elem;

    /// Coordinates over canonical terms.
    fn coords(&self, x: &Self::Elem) -> Vec<(Self::Key, Rational)>;

    /// Bidegrees of the terms of `x`.
    fn bidegrees(&self, x: &Self::Elem) -> Vec<Bidegree>;
}

/// Basis of a slice with the matrix of `δ` into the next slice.
#[derive(Debug, Clone)]
pub struct SliceBasis<E, K> {
    pub complex: ComplexId,
    pub bidegree: Bidegree,
    pub degree: i64,
    pub basis: Vec<E>,
    /// Canonical terms indexing the rows of `differential`.
    pub target_keys: Vec<K>,
    /// Column `j` holds `δ(basis[j])`.
    pub differential: SparseMatrix,
}

/// Builds a slice and the matrix of its differential.
pub fn build_slice<C: Complex>(c: &C, b: Bidegree) -> Result<SliceBasis<C::Elem, C::Key>> {
    c.check_bidegree(b)?;
    let basis = c.basis(b)?;
    let mut index: BTreeMap<C::Key, usize> = BTreeMap::new();
    let mut cols: Vec<Vec<(C::Key, Rational)>> = Vec::new();
    for x in &basis {
        let y = c.differential(x);
        for bd in c.bidegrees(&y) {
            if bd != (b.0 + 1, b.1 + 1) {
                return Err(Error::Invalid(alloc::format!("differential leaves bidegree {:?}", b)));
            }
        }
        let col = c.coords(&y);
        for (k, _) in &col {
            index.entry(k.clone()).or_insert(0);
        }
        cols.push(col);
    }
    for (i, v) in index.values_mut().enumerate() {
        *v = i;
    }
    let cols: Vec<Vec<(usize, Rational)>> =
        cols.into_iter().map(|col| col.into_iter().map(|(k, x)| (index[&k], x)).collect()).collect();
    let differential = SparseMatrix::from_columns(index.len(), &cols)?;
    Ok(SliceBasis {
        complex: c.id(),
        bidegree: b,
        degree: c.degree(b),
        basis,
        target_keys: index.into_keys().collect(),
        differential,
    })
}

/// Ranks attached to one slice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CohomologyRank {
    pub dim: usize,
    pub kernel: usize,
    /// Rank of `δ` from the predecessor slice.
    pub image: usize,
    pub cohomology: usize,
}

/// Exact ranks at a bidegree; the successor must also be within bounds.
pub fn cohomology_rank<C: Complex>(c: &C, b: Bidegree) -> Result<CohomologyRank> {
    c.check_bidegree((b.0 + 1, b.1 + 1))?;
    let s = build_slice(c, b)?;
    let dim = s.basis.len();
    let kernel = dim - rank(&s.differential);
    let image = if b.0 >= 1 && b.1 >= 1 {
        let p = build_slice(c, (b.0 - 1, b.1 - 1))?;
        rank(&p.differential)
    } else {
        0
    };
    Ok(CohomologyRank { dim, kernel, image, cohomology: kernel - image })
}

/// Whether `x` (in the slice `b`) is `δ` of something in the predecessor slice.
pub fn is_exact<C: Complex>(c: &C, x: &C::Elem, b: Bidegree) -> Result<bool> {
    if b.0 < 1 || b.1 < 1 {
        return Ok(c.coords(x).is_empty());
    }
    let p = build_slice(c, (b.0 - 1, b.1 - 1))?;
    let mut index: BTreeMap<C::Key, usize> =
        p.target_keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
    let mut rhs = Vec::new();
    for (k, v) in c.coords(x) {
        let n = index.len();
        let i = *index.entry(k).or_insert(n);
        rhs.push((i, v));
    }
    let mut e = Echelon::new();
    for col in p.differential.columns() {
        e.insert(&col);
    }
    Ok(e.reduce(&rhs).is_empty())
}

/// The graph complexes `fcGC_d` and `GC_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphComplex {
    pub d: i64,
    /// Restrict to valences at least 3 and project the differential.
    pub trivalent: bool,
}

impl GraphComplex {
    pub fn fcgc(d: i64) -> Self {
        GraphComplex { d, trivalent: false }
    }

    pub fn gc(d: i64) -> Self {
        GraphComplex { d, trivalent: true }
    }
}

impl Complex for GraphComplex {
    type Elem = GcElement;
    type Key = OrientedGraph;

    fn id(&self) -> ComplexId {
        if self.trivalent {
            ComplexId::Gc(self.d)
        } else {
            ComplexId::FcGc(self.d)
        }
    }

    fn check_bidegree(&self, (v, e): Bidegree) -> Result<()> {
        if v > GC_MAX_VERTICES {
            return Err(Error::BoundExceeded { what: "vertices", limit: GC_MAX_VERTICES, requested: v });
        }
        if e > GC_MAX_EDGES {
            return Err(Error::BoundExceeded { what: "edges", limit: GC_MAX_EDGES, requested: e });
        }
        Ok(())
    }

    fn degree(&self, (v, e): Bidegree) -> i64 {
        self.d * (v as i64 - 1) + (1 - self.d) * e as i64
    }

    fn basis(&self, (v, e): Bidegree) -> Result<Vec<GcElement>> {
        if v < 2 {
            return Ok(Vec::new());
        }
        let min = if self.trivalent { 3 } else { 1 };
        Ok(enumerate_graphs(v, e, self.d, min, true)?.iter().map(|g| GcElement::from_graph(&g.canonical)).collect())
    }

    fn differential(&self, x: &GcElement) -> GcElement {
        if self.trivalent {
            gc_projected_differential(x)
        } else {
            gc_differential_el(x)
        }
    }

    fn coords(&self, x: &GcElement) -> Vec<(OrientedGraph, Rational)> {
        x.terms().iter().map(|(g, c)| (g.clone(), c.clone())).collect()
    }

    fn bidegrees(&self, x: &GcElement) -> Vec<Bidegree> {
        x.terms().keys().map(|g| (g.n_vertices(), g.n_edges())).collect()
    }
}

/// An operad target `P` of a deformation complex `Def(Lie_d → P)`.
pub trait DefTarget {
    type Elem: Clone;
    type Key: Ord + Clone;

    fn d(&self) -> i64;
    fn arity(&self, x: &Self::Elem) -> usize;
    fn zero(&self, n: usize) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, x: &Self::Elem, c: &Rational) -> Self::Elem;
    fn compose(&self, a: &Self::Elem, i: usize, b: &Self::Elem) -> Self::Elem;
    /// The action of `S_n` on `P(n)`.
    fn act(&self, x: &Self::Elem, perm: &[u8]) -> Self::Elem;
    /// Image of the bracket.
    fn mu(&self) -> Self::Elem;
    /// Decomposition into pieces of fixed degree.
    fn homogeneous_parts(&self, x: &Self::Elem) -> Vec<(i64, Self::Elem)>;
    fn coords(&self, x: &Self::Elem) -> Vec<(Self::Key, Rational)>;
}

fn odd(d: i64) -> bool {
    d.rem_euclid(2) == 1
}

/// `(1/n!) Σ_π ε(π) π·x` with `ε = sgn` for `d` odd and `1` for `d` even.
pub fn symmetrize<T: DefTarget>(t: &T, x: &T::Elem) -> T::Elem {
    let n = t.arity(x);
    let mut out = t.zero(n);
    let mut count = 0i64;
    let mut p: Vec<u8> = (1..=n as u8).collect();
    crate::lie::permutations(&mut p, 0, &mut |perm| {
        count += 1;
        let s = if odd(t.d()) { crate::graph::permutation_sign(perm) as i64 } else { 1 };
        out = t.add(&out, &t.scale(&t.act(x, perm), &int(s)));
    });
    t.scale(&out, &Rational::new(1.into(), count.into()))
}

/// `D(x) = Σ_{s=1,2} ε_s μ ∘_s x - (-1)^{|x|} Σ_v ε_v x ∘_v μ`, with
/// `ε_s = (-1)^{(s-1)(n+1)}` and `ε_v = (-1)^{v-1}` for `d` odd, all `1` for `d` even.
pub fn raw_differential<T: DefTarget>(t: &T, x: &T::Elem) -> T::Elem {
    let n = t.arity(x);
    let mu = t.mu();
    let mut out = t.zero(n + 1);
    for s in 1..=2usize {
        let e = if odd(t.d()) && ((s - 1) * (n + 1)) % 2 == 1 { -1 } else { 1 };
        out = t.add(&out, &t.scale(&t.compose(&mu, s, x), &int(e)));
    }
    for (deg, part) in t.homogeneous_parts(x) {
        let outer = if deg.rem_euclid(2) == 0 { -1 } else { 1 };
        for v in 1..=n {
            let e = outer * gc::vertex_sign(t.d(), v);
            out = t.add(&out, &t.scale(&t.compose(&part, v, &mu), &int(e)));
        }
    }
    out
}

/// `δ = P ∘ D`.
pub fn def_differential<T: DefTarget>(t: &T, x: &T::Elem) -> T::Elem {
    symmetrize(t, &raw_differential(t, x))
}

/// Symmetrizes `generators` and keeps the first independent ones.
pub(crate) fn independent_symmetrizations<T: DefTarget>(t: &T, generators: &[T::Elem]) -> Vec<T::Elem> {
    let mut index: BTreeMap<T::Key, usize> = BTreeMap::new();
    let mut e = Echelon::new();
    let mut out = Vec::new();
    for g in generators {
        let y = symmetrize(t, g);
        let v: Vec<(usize, Rational)> = t
            .coords(&y)
            .into_iter()
            .map(|(k, c)| {
                let n = index.len();
                (*index.entry(k).or_insert(n), c)
            })
            .collect();
        if e.insert(&v).is_some() {
            out.push(y);
        }
    }
    out
}

/// The one-line label of a bidegree, e.g. `(4,6)`.
pub fn bidegree_label(b: Bidegree) -> String {
    alloc::format!("({},{})", b.0, b.1)
}
