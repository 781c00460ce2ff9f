// SPDX-License-Identifier: MIT OR Apache-2.0
//! `Def(Lie_d → Lie_d)`, sliced by arity.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::permutation_sign;
use crate::lie::{basis_words, LieElement};
use crate::linalg::{int, Rational};

use super::{def_differential, independent_symmetrizations, Bidegree, Complex, ComplexId, DefTarget, DEF_LIE_MAX_ARITY};

/// `Def(Lie_d → Lie_d)`; the slice of arity `n` has bidegree `(n, n-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DefLie {
    pub d: i64,
}

impl DefLie {
    pub fn new(d: i64) -> Self {
        DefLie { d }
    }

    fn twisted(&self) -> bool {
        self.d.rem_euclid(2) == 0
    }

    /// The class of the bracket, `P([1,2])`.
    pub fn bracket_class(&self) -> LieElement {
        super::symmetrize(self, &LieElement::bracket(self.d))
    }
}

impl DefTarget for DefLie {
    type Elem = LieElement;
    type Key = Vec<u8>;

    fn d(&self) -> i64 {
        self.d
    }

    fn arity(&self, x: &LieElement) -> usize {
        x.arity()
    }

    fn zero(&self, n: usize) -> LieElement {
        LieElement::zero(n, self.d)
    }

    fn add(&self, a: &LieElement, b: &LieElement) -> LieElement {
        a.add(b)
    }

    fn scale(&self, x: &LieElement, c: &Rational) -> LieElement {
        x.scale(c)
    }

    fn compose(&self, a: &LieElement, i: usize, b: &LieElement) -> LieElement {
        let g = a.graft(i, b).expect("slot in range");
        if self.twisted() && ((i - 1) * (b.arity() + 1)) % 2 == 1 {
            g.scale(&int(-1))
        } else {
            g
        }
    }

    fn act(&self, x: &LieElement, perm: &[u8]) -> LieElement {
        let y = x.relabel(perm).expect("valid permutation");
        if self.twisted() {
            y.scale(&int(permutation_sign(perm) as i64))
        } else {
            y
        }
    }

    fn mu(&self) -> LieElement {
        LieElement::bracket(self.d)
    }

    fn homogeneous_parts(&self, x: &LieElement) -> Vec<(i64, LieElement)> {
        alloc::vec![(x.arity() as i64 - 1, x.clone())]
    }

    fn coords(&self, x: &LieElement) -> Vec<(Vec<u8>, Rational)> {
        x.terms().iter().map(|(w, c)| (w.clone(), c.clone())).collect()
    }
}

impl Complex for DefLie {
    type Elem = LieElement;
    type Key = Vec<u8>;

    fn id(&self) -> ComplexId {
        ComplexId::DefLie(self.d)
    }

    fn check_bidegree(&self, (n, _): Bidegree) -> Result<()> {
        if n > DEF_LIE_MAX_ARITY {
            return Err(Error::BoundExceeded { what: "arity", limit: DEF_LIE_MAX_ARITY, requested: n });
        }
        Ok(())
    }

    fn degree(&self, (n, _): Bidegree) -> i64 {
        n as i64 - 1
    }

    fn basis(&self, (n, k): Bidegree) -> Result<Vec<LieElement>> {
        if n < 2 || k + 1 != n {
            return Ok(Vec::new());
        }
        let gens: Vec<LieElement> = basis_words(n).iter().map(|w| LieElement::basis(w, self.d)).collect();
        Ok(independent_symmetrizations(self, &gens))
    }

    fn differential(&self, x: &LieElement) -> LieElement {
        def_differential(self, x)
    }

    fn coords(&self, x: &LieElement) -> Vec<(Vec<u8>, Rational)> {
        DefTarget::coords(self, x)
    }

    fn bidegrees(&self, x: &LieElement) -> Vec<Bidegree> {
        if x.is_zero() {
            Vec::new()
        } else {
            alloc::vec![(x.arity(), x.arity() - 1)]
        }
    }
}
