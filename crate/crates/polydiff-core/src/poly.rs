// SPDX-License-Identifier: MIT OR Apache-2.0
//! The polydifferential operad `O(P)` over a component operad `P`.
//!
//! A term is a product of components. A component is a basis element of
//! `P(m)` together with a map from its `m` slots to white input vertices.
//! Slots attached to the same white vertex are symmetric, so a component
//! lives in the coinvariants of `P(m)` under the stabilizer of its
//! attachment map; it is stored with slots sorted by white vertex and the
//! payload reduced to a fixed basis of those coinvariants. A component of
//! `P(m)` has degree `(m - 1)(1 - d)`; odd components anticommute.
//!
//! Components with a single slot (identity strands) are never produced from
//! components with at least two slots, and the operad unit is the arity-one
//! term without components.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cell::RefCell;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gra::GraElement;
use crate::graph::{permutation_sign, OrientedGraph};
use crate::lie::{basis_words, check_perm, BracketWord, LieElement};
use crate::linalg::{int, Rational};

/// Basis element of `P(m)`, as a sequence of slot labels.
pub type Word = Vec<u8>;

/// A component operad with a finite basis in each arity.
pub trait ComponentOperad {
    /// The integer `d` fixing degrees and signs.
    fn d(&self) -> i64;
    /// Basis of `P(m)`, sorted.
    fn basis(&self, m: usize) -> Vec<Word>;
    /// Relabels slots, `k` becomes `perm[k-1]`.
    fn act(&self, w: &Word, perm: &[u8]) -> Vec<(Word, Rational)>;
    /// Partial composition `outer ∘_slot inner` of basis elements.
    fn graft(&self, outer: &Word, slot: usize, inner: &Word) -> Vec<(Word, Rational)>;
    /// Faithful expansion into slot monomials, compatible with relabelling
    /// up to the twist.
    fn monomials(&self, w: &Word) -> Vec<(Vec<u8>, i64)>;
    /// Whether relabelling carries the sign of the permutation.
    fn twisted(&self) -> bool;
    /// Text form of a basis element.
    fn word_to_string(&self, w: &Word) -> String;
    /// Sign by which the text form of `w` differs from `w`.
    fn text_sign(&self, w: &Word) -> i64 {
        let _ = w;
        1
    }
    /// Parses a text form into a combination of basis elements of arity `m`.
    fn parse_word(&self, s: &str, m: usize) -> Result<Vec<(Word, Rational)>>;

    /// Whether components of arity `m` are odd.
    fn is_odd(&self, m: usize) -> bool {
        ((m as i64 - 1) * (1 - self.d())).rem_euclid(2) == 1
    }
}

/// `Lie_d`: unshifted Lie words; for even `d` twisted by the sign
/// representation on slots, which turns relabelling by `π` into an extra
/// `sgn(π)` and grafting `k` slots at position `i` into an extra
/// `(-1)^{(i-1)(k+1)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LieD {
    pub d: i64,
}

impl ComponentOperad for LieD {
    fn d(&self) -> i64 {
        self.d
    }

    fn basis(&self, m: usize) -> Vec<Word> {
        basis_words(m)
    }

    fn act(&self, w: &Word, perm: &[u8]) -> Vec<(Word, Rational)> {
        let x = LieElement::basis(w, self.d).relabel(perm).expect("valid permutation");
        let s = if self.twisted() { permutation_sign(perm) as i64 } else { 1 };
        x.terms().iter().map(|(k, c)| (k.clone(), c * int(s))).collect()
    }

    fn graft(&self, outer: &Word, slot: usize, inner: &Word) -> Vec<(Word, Rational)> {
        let x = LieElement::basis(outer, self.d).graft(slot, &LieElement::basis(inner, self.d)).expect("slot in range");
        let k = inner.len();
        let s = if self.twisted() && ((slot - 1) * (k + 1)) % 2 == 1 { -1 } else { 1 };
        x.terms().iter().map(|(w, c)| (w.clone(), c * int(s))).collect()
    }

    fn monomials(&self, w: &Word) -> Vec<(Vec<u8>, i64)> {
        crate::lie::expand_left_normed(w)
    }

    fn twisted(&self) -> bool {
        self.d.rem_euclid(2) == 0
    }

    fn word_to_string(&self, w: &Word) -> String {
        BracketWord::left_normed(&w.iter().map(|&x| x as u32).collect::<Vec<_>>()).to_string()
    }

    fn text_sign(&self, w: &Word) -> i64 {
        if self.twisted() {
            permutation_sign(w) as i64
        } else {
            1
        }
    }

    /// For even `d` the expression is read as a composite of corollas.
    fn parse_word(&self, s: &str, m: usize) -> Result<Vec<(Word, Rational)>> {
        let b = BracketWord::parse(s)?;
        let sign = if self.twisted() { crate::lie::operadic_sign(&b) } else { 1 };
        let x = crate::lie::normalize(&[(int(sign), b)], self.d)?;
        if x.arity() != m {
            return Err(Error::DimensionMismatch { expected: m, found: x.arity() });
        }
        Ok(x.terms().iter().map(|(w, c)| (w.clone(), c.clone())).collect())
    }
}

/// `Ass`: the payload of arity `m` is a linear order of the slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Ass;

impl ComponentOperad for Ass {
    fn d(&self) -> i64 {
        1
    }

    fn basis(&self, m: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut v: Vec<u8> = (1..=m as u8).collect();
        crate::lie::permutations(&mut v, 0, &mut |p| out.push(p.to_vec()));
        out.sort();
        out
    }

    fn act(&self, w: &Word, perm: &[u8]) -> Vec<(Word, Rational)> {
        alloc::vec![(w.iter().map(|&x| perm[x as usize - 1]).collect(), Rational::one())]
    }

    fn graft(&self, outer: &Word, slot: usize, inner: &Word) -> Vec<(Word, Rational)> {
        let k = inner.len() as u8;
        let s = slot as u8;
        let mut out = Vec::new();
        for &x in outer {
            if x == s {
                out.extend(inner.iter().map(|&y| y + s - 1));
            } else if x < s {
                out.push(x);
            } else {
                out.push(x + k - 1);
            }
        }
        alloc::vec![(out, Rational::one())]
    }

    fn monomials(&self, w: &Word) -> Vec<(Vec<u8>, i64)> {
        alloc::vec![(w.clone(), 1)]
    }

    fn twisted(&self) -> bool {
        false
    }

    fn word_to_string(&self, w: &Word) -> String {
        let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
        parts.join(" ")
    }

    fn parse_word(&self, s: &str, m: usize) -> Result<Vec<(Word, Rational)>> {
        let w: Vec<u8> = s
            .split_whitespace()
            .map(|t| t.parse::<u8>().map_err(|_| Error::Invalid(alloc::format!("bad slot label {t:?}"))))
            .collect::<Result<_>>()?;
        let mut sorted = w.clone();
        sorted.sort_unstable();
        if sorted != (1..=m as u8).collect::<Vec<_>>() {
            return Err(Error::Invalid(alloc::format!("{s:?} is not an ordering of 1..={m}")));
        }
        Ok(alloc::vec![(w, Rational::one())])
    }
}

/// A component in canonical form: attachments sorted, payload reduced.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Component {
    /// White vertex of each slot, nondecreasing.
    pub attach: Vec<u8>,
    /// Basis element of the coinvariants.
    pub word: Word,
}

impl Component {
    pub fn arity(&self) -> usize {
        self.attach.len()
    }
}

/// A term: components in canonical order.
pub type Term = Vec<Component>;

/// Element of `O(P)(arity)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OElement {
    arity: usize,
    d: i64,
    terms: BTreeMap<Term, Rational>,
}

impl OElement {
    pub fn zero(arity: usize, d: i64) -> Self {
        OElement { arity, d, terms: BTreeMap::new() }
    }

    /// The operad unit: one white vertex, no components.
    pub fn unit(d: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), Rational::one());
        OElement { arity: 1, d, terms }
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

    pub fn terms(&self) -> &BTreeMap<Term, Rational> {
        &self.terms
    }

    /// Adds `c` times an already canonical term.
    pub fn add_canonical(&mut self, t: Term, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(t.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&t);
        }
    }

    pub fn add(&self, other: &OElement) -> OElement {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_canonical(t.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> OElement {
        if c.is_zero() {
            return OElement::zero(self.arity, self.d);
        }
        let terms = self.terms.iter().map(|(t, x)| (t.clone(), x * c)).collect();
        OElement { arity: self.arity, d: self.d, terms }
    }

    /// Number of distinct attachment patterns: terms that differ only in
    /// component payloads are one picture.
    pub fn n_pictures(&self) -> usize {
        let shapes: alloc::collections::BTreeSet<Vec<&Vec<u8>>> =
            self.terms.keys().map(|t| t.iter().map(|c| &c.attach).collect()).collect();
        shapes.len()
    }

    /// Drops terms with a two-slot component on a single white vertex.
    pub fn tadpole_free_part(&self) -> OElement {
        let terms = self.terms.iter().filter(|(t, _)| !term_has_tadpole(t)).map(|(t, c)| (t.clone(), c.clone())).collect();
        OElement { arity: self.arity, d: self.d, terms }
    }

    /// Keeps only the terms whose white vertices and components form a
    /// connected graph.
    pub fn connected_part(&self) -> OElement {
        let terms = self.terms.iter().filter(|(t, _)| term_is_connected(t, self.arity)).map(|(t, c)| (t.clone(), c.clone())).collect();
        OElement { arity: self.arity, d: self.d, terms }
    }
}

/// Sum of `m - 1` over the components: the number of internal vertices.
pub fn internal_vertices(t: &Term) -> usize {
    t.iter().map(|c| c.arity() - 1).sum()
}

/// Whether the white vertices `1..=n` and the components form a connected graph.
pub fn term_is_connected(t: &Term, n: usize) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for c in t {
        let a = c.attach[0] as usize - 1;
        for &w in &c.attach[1..] {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, w as usize - 1));
            parent[ra] = rb;
        }
    }
    let r0 = find(&mut parent, 0);
    (0..n).all(|x| find(&mut parent, x) == r0)
}

/// Whether some component has two slots on one white vertex and two slots in total.
pub fn term_has_tadpole(t: &Term) -> bool {
    t.iter().any(|c| c.arity() == 2 && c.attach[0] == c.attach[1])
}

/// Coinvariants of `P(m)` under the symmetric groups of blocks of
/// consecutive slots. A payload is sent to its slot monomials with every slot
/// replaced by the letter of its block (with the sign of the monomial when
/// twisted); this identifies the coinvariants with a multigraded piece of the
/// free algebra. The quotient basis consists of the first basis words whose
/// images are independent.
struct Reduction {
    basis: Vec<Word>,
    // Indices of the quotient basis words.
    quotient: Vec<usize>,
    // Row echelon of images: leading letter word -> (row with unit leading
    // coefficient, row as a combination of quotient basis words).
    rows: BTreeMap<Vec<u8>, (BTreeMap<Vec<u8>, Rational>, BTreeMap<usize, Rational>)>,
}

impl Reduction {
    /// Eliminates leading entries of `acc`; returns the combination of
    /// quotient basis words used. `acc` is left empty iff it was in the span.
    fn eliminate(&self, acc: &mut BTreeMap<Vec<u8>, Rational>) -> BTreeMap<usize, Rational> {
        let mut expr: BTreeMap<usize, Rational> = BTreeMap::new();
        while let Some((c, x)) = acc.iter().next() {
            let Some((row, e)) = self.rows.get(c) else { break };
            let x = x.clone();
            for (k, y) in row {
                let t = acc.entry(k.clone()).or_insert_with(Rational::zero);
                *t -= &x * y;
                if t.is_zero() {
                    acc.remove(k);
                }
            }
            for (k, y) in e {
                let t = expr.entry(*k).or_insert_with(Rational::zero);
                *t += &x * y;
                if t.is_zero() {
                    expr.remove(k);
                }
            }
        }
        expr
    }
}

/// `O(P)` with cached coinvariant reductions.
pub struct PolyOperad<P: ComponentOperad> {
    p: P,
    cache: RefCell<BTreeMap<Vec<usize>, Rc<Reduction>>>,
    // (word, raw attachments) -> reduced coordinates.
    word_cache: RefCell<BTreeMap<(Word, Vec<u8>), Rc<Vec<(usize, Rational)>>>>,
    graft_cache: RefCell<BTreeMap<(Word, usize, Word), Rc<Vec<(Word, Rational)>>>>,
}

/// `O(Lie_d)`.
pub type OLie = PolyOperad<LieD>;
/// `O(Ass)`.
pub type OAss = PolyOperad<Ass>;

impl OLie {
    pub fn lie(d: i64) -> Self {
        PolyOperad::new(LieD { d })
    }
}

/// Raw component before canonical form.
#[derive(Debug, Clone)]
pub struct RawComponent {
    pub attach: Vec<u8>,
    pub word: Vec<(Word, Rational)>,
}

/// Sign of sorting by the given keys, counting only swaps of odd items.
fn koszul_sort<T: Ord + Clone>(items: &mut Vec<(T, bool)>) -> i64 {
    let mut sign = 1;
    // Insertion sort: every adjacent swap of two odd items costs -1.
    for i in 1..items.len() {
        let mut j = i;
        while j > 0 && items[j - 1].0 > items[j].0 {
            if items[j - 1].1 && items[j].1 {
                sign = -sign;
            }
            items.swap(j - 1, j);
            j -= 1;
        }
    }
    sign
}

impl<P: ComponentOperad> PolyOperad<P> {
    pub fn new(p: P) -> Self {
        PolyOperad {
            p,
            cache: RefCell::new(BTreeMap::new()),
            word_cache: RefCell::new(BTreeMap::new()),
            graft_cache: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn component_operad(&self) -> &P {
        &self.p
    }

    pub fn d(&self) -> i64 {
        self.p.d()
    }

    fn reduction(&self, blocks: &[usize]) -> Rc<Reduction> {
        if let Some(r) = self.cache.borrow().get(blocks) {
            return r.clone();
        }
        let m: usize = blocks.iter().sum();
        let letters: Vec<u8> = blocks.iter().enumerate().flat_map(|(k, &b)| core::iter::repeat(k as u8 + 1).take(b)).collect();
        let mut red = Reduction { basis: self.p.basis(m), quotient: Vec::new(), rows: BTreeMap::new() };
        for i in 0..red.basis.len() {
            let mut acc = self.image(&[(red.basis[i].clone(), Rational::one())], &letters);
            let mut expr = red.eliminate(&mut acc);
            let Some((c, x)) = acc.iter().next() else { continue };
            let c = c.clone();
            // New quotient basis word i: acc = image(b_i) - Σ expr.
            let inv = x.recip();
            for (_, y) in acc.iter_mut() {
                *y *= &inv;
            }
            for (_, y) in expr.iter_mut() {
                *y *= -&inv;
            }
            expr.insert(i, inv);
            red.rows.insert(c, (acc, expr));
            red.quotient.push(i);
        }
        let r = Rc::new(red);
        self.cache.borrow_mut().insert(blocks.to_vec(), r.clone());
        r
    }

    /// Image of a payload whose slot `k` carries letter `letters[k-1]`.
    fn image(&self, word: &[(Word, Rational)], letters: &[u8]) -> BTreeMap<Vec<u8>, Rational> {
        let twisted = self.p.twisted();
        let mut acc: BTreeMap<Vec<u8>, Rational> = BTreeMap::new();
        for (w, c) in word {
            for (u, s) in self.p.monomials(w) {
                let s = if twisted { s * permutation_sign(&u) as i64 } else { s };
                let key: Vec<u8> = u.iter().map(|&x| letters[x as usize - 1]).collect();
                *acc.entry(key).or_insert_with(Rational::zero) += c * int(s);
            }
        }
        acc.retain(|_, x| !x.is_zero());
        acc
    }

    /// All canonical components with `m` slots on whites `1..=n`.
    pub fn canonical_components(&self, m: usize, n: usize) -> Vec<Component> {
        let mut out = Vec::new();
        let mut attach = alloc::vec![1u8; m];
        loop {
            let mut blocks: Vec<usize> = Vec::new();
            for (j, a) in attach.iter().enumerate() {
                if j > 0 && attach[j - 1] == *a {
                    *blocks.last_mut().unwrap() += 1;
                } else {
                    blocks.push(1);
                }
            }
            let red = self.reduction(&blocks);
            for &i in &red.quotient {
                out.push(Component { attach: attach.clone(), word: red.basis[i].clone() });
            }
            // Next nondecreasing sequence.
            let Some(j) = (0..m).rev().find(|&j| (attach[j] as usize) < n) else { break };
            let v = attach[j] + 1;
            for a in attach[j..].iter_mut() {
                *a = v;
            }
        }
        out.sort();
        out
    }

    /// Canonical form of a raw component as a combination of components.
    pub fn normalize_component(&self, raw: &RawComponent) -> Vec<(Component, Rational)> {
        let mut attach = raw.attach.clone();
        attach.sort_unstable();
        let mut blocks: Vec<usize> = Vec::new();
        for (j, a) in attach.iter().enumerate() {
            if j > 0 && attach[j - 1] == *a {
                *blocks.last_mut().unwrap() += 1;
            } else {
                blocks.push(1);
            }
        }
        let red = self.reduction(&blocks);
        let mut distinct = attach.clone();
        distinct.dedup();
        let letters: Vec<u8> = raw.attach.iter().map(|a| distinct.iter().position(|x| x == a).unwrap() as u8 + 1).collect();
        let mut v: BTreeMap<usize, Rational> = BTreeMap::new();
        for (w, c) in &raw.word {
            let key = (w.clone(), letters.clone());
            let cached = self.word_cache.borrow().get(&key).cloned();
            let coords = match cached {
                Some(r) => r,
                None => {
                    let mut acc = self.image(&[(w.clone(), Rational::one())], &letters);
                    let expr = red.eliminate(&mut acc);
                    debug_assert!(acc.is_empty());
                    let r = Rc::new(expr.into_iter().collect::<Vec<_>>());
                    self.word_cache.borrow_mut().insert(key, r.clone());
                    r
                }
            };
            for (i, x) in coords.iter() {
                *v.entry(*i).or_insert_with(Rational::zero) += c * x;
            }
        }
        v.into_iter()
            .filter(|e| !e.1.is_zero())
            .map(|(i, c)| (Component { attach: attach.clone(), word: red.basis[i].clone() }, c))
            .collect()
    }

    fn graft_cached(&self, outer: &Word, slot: usize, inner: &Word) -> Rc<Vec<(Word, Rational)>> {
        let key = (outer.clone(), slot, inner.clone());
        if let Some(r) = self.graft_cache.borrow().get(&key) {
            return r.clone();
        }
        let r = Rc::new(self.p.graft(outer, slot, inner));
        self.graft_cache.borrow_mut().insert(key, r.clone());
        r
    }

    /// Canonical form of a product of raw components, added to `out` with coefficient `c`.
    pub fn add_raw_term(&self, out: &mut OElement, raw: &[RawComponent], c: &Rational) {
        let mut partial: Vec<(Vec<Component>, Rational)> = alloc::vec![(Vec::new(), c.clone())];
        for rc in raw {
            let opts = self.normalize_component(rc);
            let mut next = Vec::with_capacity(partial.len() * opts.len());
            for (t, x) in &partial {
                for (comp, y) in &opts {
                    let mut t2 = t.clone();
                    t2.push(comp.clone());
                    next.push((t2, x * y));
                }
            }
            partial = next;
            if partial.is_empty() {
                return;
            }
        }
        for (t, x) in partial {
            let mut items: Vec<(Component, bool)> = t.into_iter().map(|comp| {
                let odd = self.p.is_odd(comp.arity());
                (comp, odd)
            }).collect();
            let sign = koszul_sort(&mut items);
            if items.windows(2).any(|w| w[0].1 && w[0].0 == w[1].0) {
                continue;
            }
            out.add_canonical(items.into_iter().map(|e| e.0).collect(), x * int(sign));
        }
    }

    /// Builds an element from raw terms.
    pub fn element(&self, arity: usize, terms: &[(Rational, Vec<RawComponent>)]) -> Result<OElement> {
        let mut out = OElement::zero(arity, self.d());
        for (c, raw) in terms {
            for rc in raw {
                if rc.attach.iter().any(|&w| w == 0 || w as usize > arity) {
                    return Err(Error::IndexOutOfRange { index: *rc.attach.iter().max().unwrap_or(&0) as usize, bound: arity });
                }
            }
            self.add_raw_term(&mut out, raw, c);
        }
        Ok(out)
    }

    /// Single component from one basis word: slot `k` on white `attach[k-1]`.
    pub fn raw(&self, word: &[u8], attach: &[u8]) -> RawComponent {
        RawComponent { attach: attach.to_vec(), word: alloc::vec![(word.to_vec(), Rational::one())] }
    }

    /// Component from a text payload over slots `1..=attach.len()`.
    pub fn parse_component(&self, word: &str, attach: &[u8]) -> Result<RawComponent> {
        Ok(RawComponent { attach: attach.to_vec(), word: self.p.parse_word(word, attach.len())? })
    }

    /// Relabels white vertices: `k` becomes `perm[k-1]`.
    pub fn s_action(&self, x: &OElement, perm: &[u8]) -> Result<OElement> {
        check_perm(perm, x.arity)?;
        let mut out = OElement::zero(x.arity, x.d);
        for (t, c) in &x.terms {
            let raw: Vec<RawComponent> = t
                .iter()
                .map(|comp| RawComponent {
                    attach: comp.attach.iter().map(|&w| perm[w as usize - 1]).collect(),
                    word: alloc::vec![(comp.word.clone(), Rational::one())],
                })
                .collect();
            self.add_raw_term(&mut out, &raw, c);
        }
        Ok(out)
    }

    /// Partial composition `a ∘_i b`.
    pub fn compose(&self, a: &OElement, i: usize, b: &OElement) -> Result<OElement> {
        if i == 0 || i > a.arity {
            return Err(Error::IndexOutOfRange { index: i, bound: a.arity });
        }
        let mut out = OElement::zero(a.arity + b.arity - 1, self.d());
        for (ta, ca) in &a.terms {
            for (tb, cb) in &b.terms {
                self.compose_terms(&mut out, ta, i, tb, b.arity, &(ca * cb));
            }
        }
        Ok(out)
    }

    fn compose_terms(&self, out: &mut OElement, ta: &Term, i: usize, tb: &Term, nb: usize, coeff: &Rational) {
        let iv = i as u8;
        let shift = |u: u8| -> u8 {
            if u < iv {
                u
            } else {
                u + nb as u8 - 1
            }
        };
        let slots: Vec<(usize, usize)> = ta
            .iter()
            .enumerate()
            .flat_map(|(l, comp)| comp.attach.iter().enumerate().filter(|(_, &w)| w == iv).map(move |(s, _)| (l, s)))
            .collect();
        let q = tb.len();
        // target[j]: index into `slots` receiving the output of B_j, or None.
        let mut target: Vec<Option<usize>> = alloc::vec![None; q];
        let mut used = alloc::vec![false; slots.len()];
        self.for_each_injection(0, &mut target, &mut used, &mut |target| {
            let free: Vec<usize> = (0..slots.len()).filter(|&k| !target.contains(&Some(k))).collect();
            let total = (nb as u64).pow(free.len() as u32);
            for code in 0..total {
                let mut g = alloc::vec![0u8; slots.len()];
                let mut c = code;
                for &k in &free {
                    g[k] = iv + (c % nb as u64) as u8;
                    c /= nb as u64;
                }
                self.assemble(out, ta, tb, &slots, target, &g, iv, &shift, coeff);
            }
        });
    }

    fn for_each_injection(
        &self,
        j: usize,
        target: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        f: &mut impl FnMut(&[Option<usize>]),
    ) {
        if j == target.len() {
            f(target);
            return;
        }
        target[j] = None;
        self.for_each_injection(j + 1, target, used, f);
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                target[j] = Some(k);
                self.for_each_injection(j + 1, target, used, f);
                used[k] = false;
            }
        }
        target[j] = None;
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        &self,
        out: &mut OElement,
        ta: &Term,
        tb: &Term,
        slots: &[(usize, usize)],
        target: &[Option<usize>],
        g: &[u8],
        iv: u8,
        shift: &impl Fn(u8) -> u8,
        coeff: &Rational,
    ) {
        let p = ta.len();
        // New order: each A_l followed by the B_j grafted into it, then the free B_j.
        let mut order: Vec<usize> = Vec::with_capacity(p + tb.len());
        for l in 0..p {
            order.push(l);
            for (j, t) in target.iter().enumerate() {
                if let Some(k) = t {
                    if slots[*k].0 == l {
                        order.push(p + j);
                    }
                }
            }
        }
        for (j, t) in target.iter().enumerate() {
            if t.is_none() {
                order.push(p + j);
            }
        }
        let odd = |x: usize| if x < p { self.p.is_odd(ta[x].arity()) } else { self.p.is_odd(tb[x - p].arity()) };
        let mut sign = 1i64;
        for a in 0..order.len() {
            for b in a + 1..order.len() {
                if order[a] > order[b] && odd(order[a]) && odd(order[b]) {
                    sign = -sign;
                }
            }
        }
        let b_white = |w: u8| iv + w - 1;
        let mut raw: Vec<RawComponent> = Vec::with_capacity(order.len());
        for l in 0..p {
            let comp = &ta[l];
            let m = comp.arity();
            // Attachments of the untouched slots.
            let mut attach: Vec<u8> = comp
                .attach
                .iter()
                .enumerate()
                .map(|(s, &w)| {
                    if w == iv {
                        let k = slots.iter().position(|&e| e == (l, s)).unwrap();
                        g[k]
                    } else {
                        shift(w)
                    }
                })
                .collect();
            let mut pos: Vec<usize> = (1..=m).collect();
            let mut word: Vec<(Word, Rational)> = alloc::vec![(comp.word.clone(), Rational::one())];
            for (j, t) in target.iter().enumerate() {
                let Some(k) = t else { continue };
                let (tl, s) = slots[*k];
                if tl != l {
                    continue;
                }
                let bj = &tb[j];
                let kb = bj.arity();
                let at = pos[s];
                let mut next: BTreeMap<Word, Rational> = BTreeMap::new();
                for (w, c) in &word {
                    for (u, x) in self.graft_cached(w, at, &bj.word).iter() {
                        *next.entry(u.clone()).or_insert_with(Rational::zero) += c * x;
                    }
                }
                word = next.into_iter().filter(|e| !e.1.is_zero()).collect();
                let inner: Vec<u8> = bj.attach.iter().map(|&w| b_white(w)).collect();
                attach.splice(at - 1..at, inner);
                for q in pos.iter_mut() {
                    if *q > at {
                        *q += kb - 1;
                    }
                }
            }
            raw.push(RawComponent { attach, word });
        }
        let mut raw_ordered: Vec<RawComponent> = Vec::with_capacity(order.len());
        // Grafted components are absorbed into their targets.
        let mut next_a = 0;
        for &x in &order {
            if x < p {
                raw_ordered.push(raw[next_a].clone());
                next_a += 1;
            } else if target[x - p].is_none() {
                let bj = &tb[x - p];
                raw_ordered.push(RawComponent {
                    attach: bj.attach.iter().map(|&w| b_white(w)).collect(),
                    word: alloc::vec![(bj.word.clone(), Rational::one())],
                });
            }
        }
        self.add_raw_term(out, &raw_ordered, &(coeff * int(sign)));
    }
}

impl OLie {
    /// One component carrying `x` with slot `k` on white `k`.
    pub fn single_component(&self, x: &LieElement) -> OElement {
        let attach: Vec<u8> = (1..=x.arity() as u8).collect();
        let raw = RawComponent { attach, word: x.terms().iter().map(|(w, c)| (w.clone(), c.clone())).collect() };
        let mut out = OElement::zero(x.arity(), self.d());
        self.add_raw_term(&mut out, &[raw], &Rational::one());
        out
    }

    /// The operad morphism `Lie_d → O_c(Lie_d)` sending the bracket to the
    /// corolla. The left-normed word `(1,2,...,m)` goes to the iterated
    /// composite `μ ∘_1 (μ ∘_1 ...)`, other words to its relabellings.
    pub fn map_i(&self, x: &LieElement) -> OElement {
        let m = x.arity();
        let mut out = OElement::zero(m, self.d());
        if m == 1 {
            return OElement::unit(self.d()).scale(&x.coeff(&[1]));
        }
        let c = self.corolla();
        let mut chain = c.clone();
        for _ in 3..=m {
            chain = self.compose(&c, 1, &chain).expect("slot 1 exists");
        }
        let twisted = self.d().rem_euclid(2) == 0;
        for (w, coeff) in x.terms() {
            let s = if twisted { permutation_sign(w) as i64 } else { 1 };
            let img = self.s_action(&chain, w).expect("word is a permutation");
            out = out.add(&img.scale(&(coeff * int(s))));
        }
        out
    }

    /// The bracket corolla `i([1,2])`.
    pub fn corolla(&self) -> OElement {
        self.single_component(&LieElement::bracket(self.d()))
    }
}

/// The quotient by terms with an internal edge, identified with `Gra_d`:
/// two-slot components become edges, tadpole terms are dropped.
pub fn quotient_to_gra(x: &OElement) -> GraElement {
    let mut out = GraElement::zero(x.arity(), x.d());
    for (t, c) in x.terms() {
        if t.iter().any(|comp| comp.arity() != 2 || comp.attach[0] == comp.attach[1]) {
            continue;
        }
        let edges = t.iter().map(|comp| (comp.attach[0], comp.attach[1])).collect();
        let g = OrientedGraph::new(x.d(), x.arity(), edges).expect("no tadpoles");
        out.add_graph(&g, c.clone());
    }
    out
}

impl OAss {
    pub fn ass() -> Self {
        PolyOperad::new(Ass)
    }

    /// Image of the associator under the naive map sending the product to
    /// the single two-slot component: `m ∘_1 m - m ∘_2 m`.
    pub fn ass_remark_check(&self) -> OElement {
        let m = self.element(2, &[(Rational::one(), alloc::vec![self.raw(&[1, 2], &[1, 2])])]).expect("valid");
        let left = self.compose(&m, 1, &m).expect("valid");
        let right = self.compose(&m, 2, &m).expect("valid");
        left.add(&right.scale(&-Rational::one()))
    }
}
