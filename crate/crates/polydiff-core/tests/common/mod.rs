// SPDX-License-Identifier: MIT OR Apache-2.0
//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use polydiff_core::linalg::{Echelon, Rational, SparseMatrix};

/// Dense Gaussian elimination rank, written independently of the sparse engine.
pub fn dense_rank(m: &SparseMatrix) -> usize {
    let mut a: Vec<Vec<Rational>> = (0..m.n_rows())
        .map(|r| (0..m.n_cols()).map(|c| m.get(r, c)).collect())
        .collect();
    let (rows, cols) = (m.n_rows(), m.n_cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        let inv = a[rank][c].recip();
        for x in a[rank].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in 0..cols {
                    let t = &f * &a[rank][k];
                    a[r][k] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Bracket tree used by the span oracle.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tree {
    L(u32),
    B(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn min_leaf(&self) -> u32 {
        match self {
            Tree::L(x) => *x,
            Tree::B(a, b) => a.min_leaf().min(b.min_leaf()),
        }
    }
}

/// Representative modulo antisymmetry: each bracket's left child holds the
/// smaller minimal leaf. Returns the sign of the rewriting.
pub fn canon(t: &Tree) -> (Tree, i64) {
    match t {
        Tree::L(x) => (Tree::L(*x), 1),
        Tree::B(a, b) => {
            let (ca, sa) = canon(a);
            let (cb, sb) = canon(b);
            if ca.min_leaf() < cb.min_leaf() {
                (Tree::B(Box::new(ca), Box::new(cb)), sa * sb)
            } else {
                (Tree::B(Box::new(cb), Box::new(ca)), -sa * sb)
            }
        }
    }
}

fn trees(labels: &[u32]) -> Vec<Tree> {
    if labels.len() == 1 {
        return vec![Tree::L(labels[0])];
    }
    let mut out = Vec::new();
    let n = labels.len();
    for mask in 1..(1u32 << n) - 1 {
        let (mut l, mut r) = (vec![], vec![]);
        for (i, &x) in labels.iter().enumerate() {
            if mask & (1 << i) != 0 { l.push(x) } else { r.push(x) }
        }
        for a in trees(&l) {
            for b in trees(&r) {
                out.push(Tree::B(Box::new(a.clone()), Box::new(b)));
            }
        }
    }
    out
}

/// Every antisymmetry representative on `{1..m}` and the span of all Jacobi
/// relations among them.
pub struct SpanOracle {
    pub index: BTreeMap<Tree, usize>,
    pub relations: Echelon,
}

fn jacobi_at(t: &Tree, out: &mut Vec<Vec<(Tree, i64)>>) {
    let Tree::B(p, q) = t else { return };
    let wrap = |x: Tree, y: Tree| Tree::B(Box::new(x), Box::new(y));
    if let Tree::B(b, c) = q.as_ref() {
        let (p, b, c) = ((**p).clone(), (**b).clone(), (**c).clone());
        out.push(vec![
            (wrap(p.clone(), wrap(b.clone(), c.clone())), 1),
            (wrap(b.clone(), wrap(c.clone(), p.clone())), 1),
            (wrap(c, wrap(p, b)), 1),
        ]);
    }
    // Relations inside subtrees, embedded in the same context.
    let mut inner = Vec::new();
    jacobi_at(p, &mut inner);
    for rel in inner {
        out.push(rel.into_iter().map(|(x, s)| (wrap(x, (**q).clone()), s)).collect());
    }
    let mut inner = Vec::new();
    jacobi_at(q, &mut inner);
    for rel in inner {
        out.push(rel.into_iter().map(|(x, s)| (wrap((**p).clone(), x), s)).collect());
    }
}

impl SpanOracle {
    pub fn new(m: usize) -> Self {
        let labels: Vec<u32> = (1..=m as u32).collect();
        let all = trees(&labels);
        let mut index = BTreeMap::new();
        for t in &all {
            let (c, _) = canon(t);
            let len = index.len();
            index.entry(c).or_insert(len);
        }
        let mut relations = Echelon::new();
        for t in index.keys().cloned().collect::<Vec<_>>() {
            let mut rels = Vec::new();
            jacobi_at(&t, &mut rels);
            // Jacobi with the roles of the two children exchanged.
            if let Tree::B(a, b) = &t {
                jacobi_at(&Tree::B(b.clone(), a.clone()), &mut rels);
            }
            for rel in rels {
                let v = Self::vector_of(&index, &rel);
                relations.insert(&v);
            }
        }
        SpanOracle { index, relations }
    }

    fn vector_of(index: &BTreeMap<Tree, usize>, comb: &[(Tree, i64)]) -> Vec<(usize, Rational)> {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (t, s) in comb {
            let (c, sc) = canon(t);
            *acc.entry(index[&c]).or_insert_with(Rational::zero) += Rational::from_integer((s * sc).into());
        }
        acc.into_iter().filter(|e| !e.1.is_zero()).collect()
    }

    /// Coordinates of a rational combination of trees.
    pub fn vector(&self, comb: &[(Tree, Rational)]) -> Vec<(usize, Rational)> {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (t, x) in comb {
            let (c, sc) = canon(t);
            *acc.entry(self.index[&c]).or_insert_with(Rational::zero) += x * Rational::from_integer(sc.into());
        }
        acc.into_iter().filter(|e| !e.1.is_zero()).collect()
    }

    /// Dimension of the quotient by antisymmetry and Jacobi.
    pub fn quotient_dim(&self) -> usize {
        self.index.len() - self.relations.rank()
    }

    /// True iff the combination vanishes modulo the relations.
    pub fn is_zero_mod_relations(&self, comb: &[(Tree, Rational)]) -> bool {
        self.relations.contains(&self.vector(comb))
    }
}

/// Converts a library bracket word into an oracle tree.
pub fn tree_of(w: &polydiff_core::lie::BracketWord) -> Tree {
    use polydiff_core::lie::BracketWord as W;
    match w {
        W::Leaf(x) => Tree::L(*x),
        W::Bracket(a, b) => Tree::B(Box::new(tree_of(a)), Box::new(tree_of(b))),
    }
}

pub fn one() -> Rational {
    Rational::one()
}
