// SPDX-License-Identifier: MIT OR Apache-2.0
//! The Gutt star product `p ∗ q = σ⁻¹(σ(p) σ(q))` on `⊙g[ħ]`, where `σ` is
//! full symmetrization into `U_ħ g = T g[ħ] / (xy - yx - ħ[x,y])`, and the
//! parallel-edge series of the induced map modulo internal edges.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gra::GraElement;
use crate::graph::OrientedGraph;
use crate::linalg::{int, Rational};

/// Generator index, 1-based.
pub type Gen = u8;

/// A Lie algebra given by structure constants `[t_i, t_j] = Σ_k c_{ij}^k t_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FPLieAlgebra {
    dim: usize,
    /// `c[(i, j)]` for `i < j`, sparse in `k`.
    c: BTreeMap<(Gen, Gen), Vec<(Gen, Rational)>>,
}

impl FPLieAlgebra {
    /// Builds from brackets `[t_i, t_j]` with `i ≠ j`; the bracket `[t_j, t_i]`
    /// is filled in by antisymmetry and may also be given if consistent.
    pub fn new(dim: usize, brackets: &[(Gen, Gen, Vec<(Gen, Rational)>)]) -> Result<Self> {
        let mut c: BTreeMap<(Gen, Gen), BTreeMap<Gen, Rational>> = BTreeMap::new();
        let check = |g: Gen| -> Result<()> {
            if g == 0 || g as usize > dim {
                return Err(Error::IndexOutOfRange { index: g as usize, bound: dim });
            }
            Ok(())
        };
        for (i, j, v) in brackets {
            check(*i)?;
            check(*j)?;
            let mut row: BTreeMap<Gen, Rational> = BTreeMap::new();
            for (k, x) in v {
                check(*k)?;
                *row.entry(*k).or_insert_with(Rational::zero) += x;
            }
            row.retain(|_, x| !x.is_zero());
            if i == j {
                if !row.is_empty() {
                    return Err(Error::Invalid(alloc::format!("[t{i}, t{i}] must vanish")));
                }
                continue;
            }
            let (key, row) = if i < j {
                ((*i, *j), row)
            } else {
                ((*j, *i), row.into_iter().map(|(k, x)| (k, -x)).collect())
            };
            match c.get(&key) {
                Some(old) if *old != row => {
                    return Err(Error::Invalid(alloc::format!("inconsistent brackets for ({}, {})", key.0, key.1)))
                }
                _ => {
                    c.insert(key, row);
                }
            }
        }
        let alg = FPLieAlgebra { dim, c: c.into_iter().map(|(k, v)| (k, v.into_iter().collect())).collect() };
        alg.check_jacobi()?;
        Ok(alg)
    }

    /// `dim` commuting generators.
    pub fn abelian(dim: usize) -> Self {
        FPLieAlgebra { dim, c: BTreeMap::new() }
    }

    /// `[x, y] = z` with `x, y, z = t1, t2, t3`.
    pub fn heisenberg() -> Self {
        Self::new(3, &[(1, 2, alloc::vec![(3, Rational::one())])]).expect("valid")
    }

    /// The two-dimensional non-abelian algebra `[x, y] = y`.
    pub fn affine() -> Self {
        Self::new(2, &[(1, 2, alloc::vec![(2, Rational::one())])]).expect("valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `[t_i, t_j]` as `(k, c_{ij}^k)` pairs.
    pub fn bracket(&self, i: Gen, j: Gen) -> Vec<(Gen, Rational)> {
        if i < j {
            self.c.get(&(i, j)).cloned().unwrap_or_default()
        } else if i > j {
            self.c.get(&(j, i)).map(|v| v.iter().map(|(k, x)| (*k, -x.clone())).collect()).unwrap_or_default()
        } else {
            Vec::new()
        }
    }

    /// Nonzero brackets `(i, j, [t_i, t_j])` with `i < j`.
    pub fn brackets(&self) -> impl Iterator<Item = (Gen, Gen, &[(Gen, Rational)])> + '_ {
        self.c.iter().map(|(&(i, j), v)| (i, j, v.as_slice()))
    }

    fn bracket_lin(&self, a: &BTreeMap<Gen, Rational>, b: &BTreeMap<Gen, Rational>) -> BTreeMap<Gen, Rational> {
        let mut out: BTreeMap<Gen, Rational> = BTreeMap::new();
        for (i, x) in a {
            for (j, y) in b {
                for (k, c) in self.bracket(*i, *j) {
                    *out.entry(k).or_insert_with(Rational::zero) += x * y * c;
                }
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }

    fn check_jacobi(&self) -> Result<()> {
        let gens: Vec<Gen> = (1..=self.dim as Gen).collect();
        let unit = |g: Gen| -> BTreeMap<Gen, Rational> { [(g, Rational::one())].into_iter().collect() };
        for &i in &gens {
            for &j in &gens {
                for &k in &gens {
                    let (a, b, c) = (unit(i), unit(j), unit(k));
                    let mut sum: BTreeMap<Gen, Rational> = BTreeMap::new();
                    for t in [
                        self.bracket_lin(&self.bracket_lin(&a, &b), &c),
                        self.bracket_lin(&self.bracket_lin(&b, &c), &a),
                        self.bracket_lin(&self.bracket_lin(&c, &a), &b),
                    ] {
                        for (g, x) in t {
                            *sum.entry(g).or_insert_with(Rational::zero) += x;
                        }
                    }
                    if sum.values().any(|x| !x.is_zero()) {
                        return Err(Error::Invalid(alloc::format!("Jacobi identity fails on (t{i}, t{j}, t{k})")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Polynomial in sorted monomials with coefficients in `ℚ[ħ]`. Read either
/// as an element of `⊙g[ħ]` or, via PBW-ordered monomials, of `U_ħ g`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HPoly {
    /// `(monomial, ħ-power) -> coefficient`.
    terms: BTreeMap<(Vec<Gen>, u32), Rational>,
}

/// Elements of `U_ħ g` in PBW normal form.
pub type UEnvElement = HPoly;

impl HPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(&[])
    }

    /// The monomial with the given generators, sorted.
    pub fn monomial(gens: &[Gen]) -> Self {
        let mut m = gens.to_vec();
        m.sort_unstable();
        let mut out = Self::zero();
        out.add_term(m, 0, Rational::one());
        out
    }

    /// A linear combination of generators.
    pub fn linear(coeffs: &[(Gen, Rational)]) -> Self {
        let mut out = Self::zero();
        for (g, c) in coeffs {
            out.add_term(alloc::vec![*g], 0, c.clone());
        }
        out
    }

    /// Adds `c ħ^h` times a sorted monomial.
    pub fn add_term(&mut self, m: Vec<Gen>, h: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (m, h);
        let e = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> &BTreeMap<(Vec<Gen>, u32), Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `ħ^h` times the monomial `m` (sorted first).
    pub fn coeff(&self, m: &[Gen], h: u32) -> Rational {
        let mut m = m.to_vec();
        m.sort_unstable();
        self.terms.get(&(m, h)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &HPoly) -> HPoly {
        let mut out = self.clone();
        for ((m, h), c) in &other.terms {
            out.add_term(m.clone(), *h, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &HPoly) -> HPoly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> HPoly {
        if c.is_zero() {
            return HPoly::zero();
        }
        HPoly { terms: self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect() }
    }

    /// Multiplies by `ħ^h`.
    pub fn shift_hbar(&self, h: u32) -> HPoly {
        HPoly { terms: self.terms.iter().map(|((m, e), x)| ((m.clone(), e + h), x.clone())).collect() }
    }

    /// The commutative product `⊙`.
    pub fn sym_mul(&self, other: &HPoly) -> HPoly {
        let mut out = HPoly::zero();
        for ((m1, h1), c1) in &self.terms {
            for ((m2, h2), c2) in &other.terms {
                let mut m = m1.clone();
                m.extend_from_slice(m2);
                m.sort_unstable();
                out.add_term(m, h1 + h2, c1 * c2);
            }
        }
        out
    }

    /// Largest polynomial degree of a term.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|(m, _)| m.len()).max()
    }

    /// Terms of `ħ`-order exactly `h`.
    pub fn hbar_part(&self, h: u32) -> HPoly {
        HPoly { terms: self.terms.iter().filter(|((_, e), _)| *e == h).map(|(k, x)| (k.clone(), x.clone())).collect() }
    }
}

/// PBW normal form of a word: repeatedly rewrites `t_j t_i` with `j > i` as
/// `t_i t_j + ħ [t_j, t_i]`.
pub fn straighten(alg: &FPLieAlgebra, word: &[Gen]) -> UEnvElement {
    let mut out = HPoly::zero();
    let mut stack: Vec<(Vec<Gen>, u32, Rational)> = alloc::vec![(word.to_vec(), 0, Rational::one())];
    while let Some((w, h, c)) = stack.pop() {
        match (0..w.len().saturating_sub(1)).find(|&p| w[p] > w[p + 1]) {
            None => out.add_term(w, h, c),
            Some(p) => {
                let mut swapped = w.clone();
                swapped.swap(p, p + 1);
                stack.push((swapped, h, c.clone()));
                for (k, x) in alg.bracket(w[p], w[p + 1]) {
                    let mut r = w[..p].to_vec();
                    r.push(k);
                    r.extend_from_slice(&w[p + 2..]);
                    stack.push((r, h + 1, &c * x));
                }
            }
        }
    }
    out
}

/// Product in `U_ħ g` of PBW-form elements.
pub fn uenv_mul(alg: &FPLieAlgebra, a: &UEnvElement, b: &UEnvElement) -> UEnvElement {
    let mut out = HPoly::zero();
    for ((m1, h1), c1) in a.terms() {
        for ((m2, h2), c2) in b.terms() {
            let mut w = m1.clone();
            w.extend_from_slice(m2);
            out = out.add(&straighten(alg, &w).shift_hbar(h1 + h2).scale(&(c1 * c2)));
        }
    }
    out
}

/// Symmetrization of one sorted monomial through
/// `σ(m) = (1/k) Σ_i t_{m_i} σ(m \ m_i)`, memoized on sub-monomials.
fn sigma_monomial(alg: &FPLieAlgebra, m: &[Gen], memo: &mut BTreeMap<Vec<Gen>, HPoly>) -> HPoly {
    if m.len() <= 1 {
        return HPoly::monomial(m);
    }
    if let Some(x) = memo.get(m) {
        return x.clone();
    }
    let k = m.len() as i64;
    let mut out = HPoly::zero();
    let mut p = 0;
    while p < m.len() {
        let g = m[p];
        let mult = m[p..].iter().take_while(|&&x| x == g).count();
        // `m` with one copy of `g` removed, still sorted.
        let mut rest = m[..p + mult - 1].to_vec();
        rest.extend_from_slice(&m[p + mult..]);
        let inner = sigma_monomial(alg, &rest, memo);
        for ((w, h), c) in inner.terms() {
            let mut word = alloc::vec![g];
            word.extend_from_slice(w);
            out = out.add(&straighten(alg, &word).shift_hbar(*h).scale(&(c * Rational::new((mult as i64).into(), k.into()))));
        }
        p += mult;
    }
    memo.insert(m.to_vec(), out.clone());
    out
}

/// Full symmetrization `t_{i1} ⊙ ... ⊙ t_{ik} ↦ (1/k!) Σ_τ t_{iτ(1)} ... t_{iτ(k)}`.
pub fn sigma(alg: &FPLieAlgebra, p: &HPoly) -> UEnvElement {
    sigma_with(alg, p, &mut BTreeMap::new())
}

fn sigma_with(alg: &FPLieAlgebra, p: &HPoly, memo: &mut BTreeMap<Vec<Gen>, HPoly>) -> UEnvElement {
    let mut out = HPoly::zero();
    for ((m, h), c) in p.terms() {
        out = out.add(&sigma_monomial(alg, m, memo).shift_hbar(*h).scale(c));
    }
    out
}

/// Inverse of [`sigma`]: `σ(m)` is `m` plus terms of lower degree, so the
/// top-degree terms are peeled off one at a time.
pub fn sigma_inv(alg: &FPLieAlgebra, u: &UEnvElement) -> HPoly {
    let mut rest = u.clone();
    let mut out = HPoly::zero();
    let mut memo = BTreeMap::new();
    while let Some(((m, h), c)) =
        rest.terms().iter().max_by_key(|((m, h), _)| (m.len(), core::cmp::Reverse(*h))).map(|(k, c)| (k.clone(), c.clone()))
    {
        let mut t = HPoly::zero();
        t.add_term(m, h, c);
        rest = rest.sub(&sigma_with(alg, &t, &mut memo));
        out = out.add(&t);
    }
    out
}

/// The Gutt star product `σ⁻¹(σ(p) σ(q))`.
pub fn star(alg: &FPLieAlgebra, p: &HPoly, q: &HPoly) -> HPoly {
    sigma_inv(alg, &uenv_mul(alg, &sigma(alg, p), &sigma(alg, q)))
}

/// Largest edge count accepted by [`gutt_mod_i_series`].
pub const SERIES_MAX_EDGES: usize = 8;

/// `k` parallel edges `1 -> 2` in `Gra_1(2)`.
pub fn parallel_edges(k: usize) -> OrientedGraph {
    OrientedGraph::new(1, 2, alloc::vec![(1, 2); k]).expect("valid")
}

/// `Σ_{k ≤ max_edges} (1/k!) (k parallel edges 1 -> 2)`, one entry per `k`:
/// the image of the product of `Ass` modulo internal edges.
pub fn gutt_mod_i_series(max_edges: usize) -> Result<Vec<GraElement>> {
    if max_edges > SERIES_MAX_EDGES {
        return Err(Error::BoundExceeded { what: "edges", limit: SERIES_MAX_EDGES, requested: max_edges });
    }
    let mut fact = Rational::one();
    let mut out = Vec::new();
    for k in 0..=max_edges {
        if k > 0 {
            fact *= int(k as i64);
        }
        out.push(GraElement::from_graph(&parallel_edges(k), fact.recip()));
    }
    Ok(out)
}

/// Applies `x ↦ (x - (12)·x) / 2` to every term.
pub fn skew_symmetrize_series(s: &[GraElement]) -> Result<Vec<GraElement>> {
    let half = Rational::new(1.into(), 2.into());
    s.iter()
        .map(|x| {
            if x.arity() != 2 {
                return Err(Error::DimensionMismatch { expected: 2, found: x.arity() });
            }
            let swapped = x.s_action(&[2, 1])?;
            Ok(x.add(&swapped.scale(&-Rational::one())).scale(&half))
        })
        .collect()
}
