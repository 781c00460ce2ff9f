// SPDX-License-Identifier: MIT OR Apache-2.0
//! Oriented graphs without hairs or tadpoles, their labelled normal forms and
//! unlabelled canonical forms with orientation signs.
//!
//! Orientation data: for `d` even, the order of the edge list up to even
//! permutations; for `d` odd, the direction of each edge together with, in
//! unlabelled contexts, the ordering of the vertices.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Vertex label, 1-based.
pub type Vertex = u8;

/// Graph with vertices `1..=n` and an ordered list of (tail, head) edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrientedGraph {
    d: i64,
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

/// Canonical representative with the factor relating the input to it.
///
/// `sign` is `+1` or `-1` with `input = sign * canonical`, or `0` when the
/// graph has an automorphism reversing its orientation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedCanonical {
    pub canonical: OrientedGraph,
    pub sign: i8,
}

/// Maximal vertex count accepted by [`enumerate_graphs`].
pub const ENUM_MAX_VERTICES: usize = 8;
/// Maximal edge count accepted by [`enumerate_graphs`].
pub const ENUM_MAX_EDGES: usize = 14;

fn perm_parity(p: &[usize]) -> i8 {
    let mut seen = alloc::vec![false; p.len()];
    let mut sign = 1i8;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Sign of a permutation given as a 1-based image list.
pub fn permutation_sign(perm: &[u8]) -> i8 {
    let p: Vec<usize> = perm.iter().map(|&x| x as usize - 1).collect();
    perm_parity(&p)
}

/// Sorts `v` and returns the parity of the sorting permutation.
fn sort_with_parity<T: Ord + Clone>(v: &mut [T]) -> i8 {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].cmp(&v[b]));
    let sorted: Vec<T> = idx.iter().map(|&i| v[i].clone()).collect();
    v.clone_from_slice(&sorted);
    perm_parity(&idx)
}

impl OrientedGraph {
    /// Validates labels and rejects tadpoles.
    pub fn new(d: i64, n: usize, edges: Vec<(Vertex, Vertex)>) -> Result<Self> {
        for &(t, h) in &edges {
            if t == 0 || h == 0 || t as usize > n || h as usize > n {
                return Err(Error::Invalid(format!("edge ({t},{h}) outside vertices 1..={n}")));
            }
            if t == h {
                return Err(Error::Invalid(format!("tadpole at vertex {t}")));
            }
        }
        Ok(OrientedGraph { d, n, edges })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn d_odd(&self) -> bool {
        self.d.rem_euclid(2) == 1
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Degree `d(v - 1) + (1 - d)e` as a generator of the graph complex.
    pub fn degree(&self) -> i64 {
        self.d * (self.n as i64 - 1) + (1 - self.d) * self.edges.len() as i64
    }

    /// Valence of every vertex, indexed from 0.
    pub fn valences(&self) -> Vec<usize> {
        let mut v = alloc::vec![0; self.n];
        for &(t, h) in &self.edges {
            v[t as usize - 1] += 1;
            v[h as usize - 1] += 1;
        }
        v
    }

    /// Connectivity by traversal; the empty graph counts as disconnected.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut adj = alloc::vec![Vec::new(); self.n];
        for &(t, h) in &self.edges {
            adj[t as usize - 1].push(h as usize - 1);
            adj[h as usize - 1].push(t as usize - 1);
        }
        let mut seen = alloc::vec![false; self.n];
        let mut stack = alloc::vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Moves vertex `k` to `perm[k-1]`, transporting edge order and directions.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<OrientedGraph> {
        crate::lie::check_perm(perm, self.n)?;
        Ok(self.relabel_unchecked(perm))
    }

    fn relabel_unchecked(&self, perm: &[Vertex]) -> OrientedGraph {
        let edges = self.edges.iter().map(|&(t, h)| (perm[t as usize - 1], perm[h as usize - 1])).collect();
        OrientedGraph { d: self.d, n: self.n, edges }
    }

    /// Normal form with fixed vertex labels: `d` odd directs every edge from
    /// the smaller to the larger label (a flip costs `-1`) and sorts edges;
    /// `d` even sorts the edge list (odd reorderings cost `-1`) and is zero on
    /// parallel edges. Returns `(normal form, sign)` with `input = sign * nf`.
    pub fn labeled_normal_form(&self) -> (OrientedGraph, i8) {
        let mut sign = 1i8;
        let mut edges: Vec<(Vertex, Vertex)> = self
            .edges
            .iter()
            .map(|&(t, h)| {
                if t > h {
                    if self.d_odd() {
                        sign = -sign;
                    }
                    (h, t)
                } else {
                    (t, h)
                }
            })
            .collect();
        let parity = sort_with_parity(&mut edges);
        if !self.d_odd() {
            sign *= parity;
            if edges.windows(2).any(|w| w[0] == w[1]) {
                sign = 0;
            }
        }
        (OrientedGraph { d: self.d, n: self.n, edges }, sign)
    }

    /// Unlabelled canonical form; for `d` odd the vertex ordering is part of
    /// the orientation, so relabelling by `π` contributes `sgn(π)`.
    pub fn canonicalize(&self) -> SignedCanonical {
        let cells = self.refined_cells();
        let mut best: Option<Vec<(Vertex, Vertex)>> = None;
        let mut best_sign = 0i8;
        let mut zero = false;
        let mut perm = alloc::vec![0 as Vertex; self.n];
        let d_odd = self.d_odd();
        let mut visit = |perm: &[Vertex]| {
            let h = self.relabel_unchecked(perm);
            let (nf, s) = h.labeled_normal_form();
            let mut sign = s;
            if d_odd {
                sign *= permutation_sign(perm);
            }
            match &best {
                Some(b) if nf.edges > *b => {}
                Some(b) if nf.edges == *b => {
                    if sign != best_sign {
                        zero = true;
                    }
                }
                _ => {
                    best = Some(nf.edges.clone());
                    best_sign = sign;
                    zero = sign == 0;
                }
            }
        };
        assign_cells(&cells, 0, 0, 0, &mut perm, &mut alloc::vec![false; self.n], &mut visit);
        let canonical = OrientedGraph { d: self.d, n: self.n, edges: best.unwrap_or_default() };
        let sign = if zero || best_sign == 0 { 0 } else { best_sign };
        SignedCanonical { canonical, sign }
    }

    /// Vertex classes from iterated colour refinement, as lists of 0-based
    /// vertices in class order. The order depends only on the isomorphism type.
    fn refined_cells(&self) -> Vec<Vec<usize>> {
        let mut adj = alloc::vec![Vec::new(); self.n];
        for &(t, h) in &self.edges {
            adj[t as usize - 1].push(h as usize - 1);
            adj[h as usize - 1].push(t as usize - 1);
        }
        let mut colour: Vec<usize> = adj.iter().map(Vec::len).collect();
        let mut classes = colour.iter().collect::<BTreeSet<_>>().len();
        loop {
            let keys: Vec<(usize, Vec<usize>)> = (0..self.n)
                .map(|v| {
                    let mut nb: Vec<usize> = adj[v].iter().map(|&w| colour[w]).collect();
                    nb.sort_unstable();
                    (colour[v], nb)
                })
                .collect();
            let ranks: BTreeMap<&(usize, Vec<usize>), usize> =
                keys.iter().collect::<BTreeSet<_>>().into_iter().enumerate().map(|(i, k)| (k, i)).collect();
            colour = keys.iter().map(|k| ranks[k]).collect();
            let new_classes = ranks.len();
            if new_classes == classes {
                break;
            }
            classes = new_classes;
        }
        let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (v, c) in colour.iter().enumerate() {
            cells.entry(*c).or_default().push(v);
        }
        cells.into_values().collect()
    }
}

/// Enumerates labellings that send the `ci`-th cell onto the next block of
/// labels; `k` vertices of the current cell are already placed.
fn assign_cells(
    cells: &[Vec<usize>],
    ci: usize,
    k: usize,
    base: usize,
    perm: &mut Vec<Vertex>,
    used: &mut Vec<bool>,
    visit: &mut impl FnMut(&[Vertex]),
) {
    if ci == cells.len() {
        visit(perm);
        return;
    }
    let cell = &cells[ci];
    if k == cell.len() {
        assign_cells(cells, ci + 1, 0, base + cell.len(), perm, used, visit);
        return;
    }
    for &v in cell {
        if !used[v] {
            used[v] = true;
            perm[v] = (base + k + 1) as Vertex;
            assign_cells(cells, ci, k + 1, base, perm, used, visit);
            used[v] = false;
        }
    }
}

/// Duplicate-free nonzero canonical graphs with the given counts, sorted.
pub fn enumerate_graphs(
    n_vertices: usize,
    n_edges: usize,
    d: i64,
    min_valence: usize,
    connected: bool,
) -> Result<Vec<SignedCanonical>> {
    if n_vertices > ENUM_MAX_VERTICES {
        return Err(Error::BoundExceeded { what: "vertices", limit: ENUM_MAX_VERTICES, requested: n_vertices });
    }
    if n_edges > ENUM_MAX_EDGES {
        return Err(Error::BoundExceeded { what: "edges", limit: ENUM_MAX_EDGES, requested: n_edges });
    }
    let d_odd = d.rem_euclid(2) == 1;
    // Structural forms: canonical edge sets ignoring orientation.
    let structural = |g: &OrientedGraph| -> OrientedGraph {
        let mut c = OrientedGraph { d: 1, n: g.n, edges: g.edges.clone() }.canonicalize().canonical;
        c.d = d;
        c
    };
    let mut level: BTreeSet<OrientedGraph> = BTreeSet::new();
    level.insert(OrientedGraph { d, n: n_vertices, edges: Vec::new() });
    for _ in 0..n_edges {
        let mut next = BTreeSet::new();
        for g in &level {
            for a in 1..=n_vertices as Vertex {
                for b in a + 1..=n_vertices as Vertex {
                    if !d_odd && g.edges.contains(&(a, b)) {
                        continue;
                    }
                    let mut edges = g.edges.clone();
                    edges.push((a, b));
                    next.insert(structural(&OrientedGraph { d, n: n_vertices, edges }));
                }
            }
        }
        level = next;
    }
    let mut out: Vec<SignedCanonical> = level
        .into_iter()
        .filter(|g| (!connected || g.is_connected()) && g.valences().iter().all(|&v| v >= min_valence))
        .map(|g| g.canonicalize())
        .filter(|c| c.sign != 0)
        .map(|c| SignedCanonical { canonical: c.canonical, sign: 1 })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}
