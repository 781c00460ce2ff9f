// SPDX-License-Identifier: MIT OR Apache-2.0
//! `Def(Lie_d → O_c(Lie_d))` and the map `F` to `fcGC_d`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::OrientedGraph;
use crate::linalg::{int, normalize_sparse, solve, Rational, SparseMatrix};
use crate::poly::{
    internal_vertices, term_is_connected, Component, ComponentOperad, OElement, OLie,
    RawComponent, Term,
};

use super::gc::GcElement;
use super::{
    def_differential, independent_symmetrizations, Bidegree, Complex, ComplexId, DefTarget, DEF_MAX_ARITY,
    DEF_MAX_INTERNAL,
};

/// `Def(Lie_d → O_c(Lie_d))` on tadpole-free terms, sliced by
/// (arity, internal vertices).
pub struct DefOc {
    o: OLie,
}

impl DefOc {
    pub fn new(d: i64) -> Self {
        DefOc { o: OLie::lie(d) }
    }

    pub fn operad(&self) -> &OLie {
        &self.o
    }

    pub fn d(&self) -> i64 {
        self.o.d()
    }

    /// `d(n-1) + (1-d)k` for a term with `k` internal vertices.
    pub fn term_degree(&self, n: usize, t: &Term) -> i64 {
        let d = self.d();
        d * (n as i64 - 1) + (1 - d) * internal_vertices(t) as i64
    }

    /// Canonical connected tadpole-free terms of arity `n` with `k` internal vertices.
    pub fn slice_terms(&self, n: usize, k: usize) -> Vec<Term> {
        let mut comps: Vec<Component> = Vec::new();
        for m in 2..=k + 1 {
            comps.extend(self.o.canonical_components(m, n).into_iter().filter(|c| !(m == 2 && c.attach[0] == c.attach[1])));
        }
        comps.sort();
        let mut out = Vec::new();
        let mut chosen: Vec<usize> = Vec::new();
        self.choose(&comps, 0, k, n, &mut chosen, &mut out);
        out.sort();
        out.dedup();
        out
    }

    fn choose(&self, comps: &[Component], from: usize, left: usize, n: usize, chosen: &mut Vec<usize>, out: &mut Vec<Term>) {
        if left == 0 {
            let t: Term = chosen.iter().map(|&i| comps[i].clone()).collect();
            if term_is_connected(&t, n) {
                out.push(t);
            }
            return;
        }
        for i in from..comps.len() {
            let m = comps[i].arity();
            if m - 1 > left {
                continue;
            }
            if chosen.last() == Some(&i) && self.o.component_operad().is_odd(m) {
                continue;
            }
            chosen.push(i);
            self.choose(comps, i, left - (m - 1), n, chosen, out);
            chosen.pop();
        }
    }

    /// A single canonical term as an element.
    pub fn term_element(&self, n: usize, t: &Term) -> OElement {
        let raw: Vec<RawComponent> = t.iter().map(|c| self.o.raw(&c.word, &c.attach)).collect();
        let mut out = OElement::zero(n, self.d());
        self.o.add_raw_term(&mut out, &raw, &Rational::one());
        out
    }

    /// Three parallel two-slot components on whites 1 and 2, symmetrized.
    pub fn theta(&self) -> OElement {
        let c = self.o.raw(&[1, 2], &[1, 2]);
        let mut x = OElement::zero(2, self.d());
        self.o.add_raw_term(&mut x, &[c.clone(), c.clone(), c], &Rational::one());
        super::symmetrize(self, &x)
    }

    /// `x + c` with `c` in the slice `b`, `F(c) = 0` and `δ(x + c) = 0`, when
    /// such a correction exists.
    pub fn closed_lift(&self, x: &OElement, b: Bidegree) -> Result<Option<OElement>> {
        let basis = Complex::basis(self, b)?;
        let mut terms: BTreeMap<Term, usize> = BTreeMap::new();
        let mut graphs: BTreeMap<OrientedGraph, usize> = BTreeMap::new();
        let mut cols: Vec<(Vec<(Term, Rational)>, Vec<(OrientedGraph, Rational)>)> = Vec::new();
        for y in &basis {
            let dy: Vec<(Term, Rational)> = def_differential(self, y).terms().iter().map(|(t, c)| (t.clone(), c.clone())).collect();
            let fy: Vec<(OrientedGraph, Rational)> = self.map_f(y).terms().iter().map(|(g, c)| (g.clone(), c.clone())).collect();
            for (t, _) in &dy {
                let n = terms.len();
                terms.entry(t.clone()).or_insert(n);
            }
            for (g, _) in &fy {
                let n = graphs.len();
                graphs.entry(g.clone()).or_insert(n);
            }
            cols.push((dy, fy));
        }
        let off = terms.len();
        let cols: Vec<Vec<(usize, Rational)>> = cols
            .into_iter()
            .map(|(dy, fy)| {
                let mut col: Vec<(usize, Rational)> = dy.into_iter().map(|(t, c)| (terms[&t], c)).collect();
                col.extend(fy.into_iter().map(|(g, c)| (off + graphs[&g], c)));
                col
            })
            .collect();
        let m = SparseMatrix::from_columns(off + graphs.len(), &cols)?;
        let mut rhs = Vec::new();
        for (t, c) in def_differential(self, x).terms() {
            match terms.get(t) {
                Some(&i) => rhs.push((i, -c.clone())),
                None => return Ok(None),
            }
        }
        let Some(a) = solve(&m, &normalize_sparse(rhs))? else { return Ok(None) };
        let mut out = x.clone();
        for (i, c) in a {
            out = out.add(&basis[i].scale(&c));
        }
        Ok(Some(out))
    }

    /// `F`: keeps the terms made of two-slot components, read as graphs on
    /// the whites. A term of degree `p` is multiplied by
    /// `-(-1)^{p(p+1)/2}`, which turns the bracket with the corolla into the
    /// graph differential.
    pub fn map_f(&self, x: &OElement) -> GcElement {
        let mut out = GcElement::zero(self.d());
        for (t, c) in x.terms() {
            if t.iter().any(|comp| comp.arity() != 2 || comp.attach[0] == comp.attach[1]) {
                continue;
            }
            let edges = t.iter().map(|comp| (comp.attach[0], comp.attach[1])).collect();
            let g = OrientedGraph::new(self.d(), x.arity(), edges).expect("no tadpoles");
            out.add_graph(&g, c * int(f_sign(self.term_degree(x.arity(), t))));
        }
        out
    }
}

/// `-(-1)^{p(p+1)/2}`.
pub fn f_sign(p: i64) -> i64 {
    if (p * (p + 1) / 2).rem_euclid(2) == 0 {
        -1
    } else {
        1
    }
}

impl DefTarget for DefOc {
    type Elem = OElement;
    type Key = Term;

    fn d(&self) -> i64 {
        self.o.d()
    }

    fn arity(&self, x: &OElement) -> usize {
        x.arity()
    }

    fn zero(&self, n: usize) -> OElement {
        OElement::zero(n, self.d())
    }

    fn add(&self, a: &OElement, b: &OElement) -> OElement {
        a.add(b)
    }

    fn scale(&self, x: &OElement, c: &Rational) -> OElement {
        x.scale(c)
    }

    fn compose(&self, a: &OElement, i: usize, b: &OElement) -> OElement {
        self.o.compose(a, i, b).expect("slot in range")
    }

    fn act(&self, x: &OElement, perm: &[u8]) -> OElement {
        self.o.s_action(x, perm).expect("valid permutation")
    }

    fn mu(&self) -> OElement {
        self.o.corolla()
    }

    fn homogeneous_parts(&self, x: &OElement) -> Vec<(i64, OElement)> {
        let mut parts: BTreeMap<i64, OElement> = BTreeMap::new();
        for (t, c) in x.terms() {
            let deg = self.term_degree(x.arity(), t);
            parts.entry(deg).or_insert_with(|| OElement::zero(x.arity(), self.d())).add_canonical(t.clone(), c.clone());
        }
        parts.into_iter().collect()
    }

    fn coords(&self, x: &OElement) -> Vec<(Term, Rational)> {
        x.terms().iter().map(|(t, c)| (t.clone(), c.clone())).collect()
    }
}

impl Complex for DefOc {
    type Elem = OElement;
    type Key = Term;

    fn id(&self) -> ComplexId {
        ComplexId::DefOc(self.d())
    }

    fn check_bidegree(&self, (n, k): Bidegree) -> Result<()> {
        if n > DEF_MAX_ARITY {
            return Err(Error::BoundExceeded { what: "arity", limit: DEF_MAX_ARITY, requested: n });
        }
        if k > DEF_MAX_INTERNAL {
            return Err(Error::BoundExceeded { what: "internal vertices", limit: DEF_MAX_INTERNAL, requested: k });
        }
        Ok(())
    }

    fn degree(&self, (n, k): Bidegree) -> i64 {
        let d = self.d();
        d * (n as i64 - 1) + (1 - d) * k as i64
    }

    fn basis(&self, (n, k): Bidegree) -> Result<Vec<OElement>> {
        if n < 2 {
            return Ok(Vec::new());
        }
        let gens: Vec<OElement> = self.slice_terms(n, k).iter().map(|t| self.term_element(n, t)).collect();
        Ok(independent_symmetrizations(self, &gens))
    }

    fn differential(&self, x: &OElement) -> OElement {
        def_differential(self, x)
    }

    fn coords(&self, x: &OElement) -> Vec<(Term, Rational)> {
        DefTarget::coords(self, x)
    }

    fn bidegrees(&self, x: &OElement) -> Vec<Bidegree> {
        x.terms().keys().map(|t| (x.arity(), internal_vertices(t))).collect()
    }
}
