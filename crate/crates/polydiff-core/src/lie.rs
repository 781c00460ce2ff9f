// SPDX-License-Identifier: MIT OR Apache-2.0
//! Multilinear free Lie algebra normal forms, grafting and the truncated
//! Baker–Campbell–Hausdorff series.
//!
//! Basis of `Lie(m)`: left-normed words `[[..[x_1, x_a], x_b], ..]` whose
//! leading leaf is the minimal label 1. A word is stored as its leaf
//! sequence. Coefficients are read off from the associative expansion: for a
//! multilinear Lie polynomial, the coefficient of the left-normed word with
//! leaf sequence `1 a b ..` equals the coefficient of the associative
//! monomial `x_1 x_a x_b ..`.
//!
//! Words are stored unshifted. The degree `(m-1)(1-d)` and every sign coming
//! from the `d`-shift are applied by the polydifferential layer.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{int, solve, Echelon, Rational, SparseMatrix};

/// Binary bracket tree with labelled leaves.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BracketWord {
    Leaf(u32),
    Bracket(Box<BracketWord>, Box<BracketWord>),
}

/// Associative polynomial: monomial (letter sequence) to coefficient.
pub type AssocPoly = BTreeMap<Vec<u8>, Rational>;

impl BracketWord {
    pub fn leaf(n: u32) -> Self {
        BracketWord::Leaf(n)
    }

    pub fn bracket(a: BracketWord, b: BracketWord) -> Self {
        BracketWord::Bracket(Box::new(a), Box::new(b))
    }

    /// The left-normed word `[[..[s_1, s_2], ..], s_m]`.
    pub fn left_normed(seq: &[u32]) -> Self {
        let mut it = seq.iter();
        let mut w = BracketWord::Leaf(*it.next().expect("nonempty leaf sequence"));
        for &x in it {
            w = BracketWord::bracket(w, BracketWord::Leaf(x));
        }
        w
    }

    /// Leaf labels from left to right.
    pub fn leaves(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<u32>) {
        match self {
            BracketWord::Leaf(x) => out.push(*x),
            BracketWord::Bracket(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    /// Associative expansion `[a, b] = ab - ba`, with integer coefficients.
    pub fn expand(&self) -> AssocPoly {
        match self {
            BracketWord::Leaf(x) => {
                let mut p = AssocPoly::new();
                p.insert(alloc::vec![*x as u8], Rational::one());
                p
            }
            BracketWord::Bracket(a, b) => {
                let pa = a.expand();
                let pb = b.expand();
                let mut out = AssocPoly::new();
                for (u, x) in &pa {
                    for (v, y) in &pb {
                        let c = x * y;
                        let mut uv = u.clone();
                        uv.extend_from_slice(v);
                        add_to(&mut out, uv, c.clone());
                        let mut vu = v.clone();
                        vu.extend_from_slice(u);
                        add_to(&mut out, vu, -c);
                    }
                }
                out
            }
        }
    }

    /// Parses `expr := INT | "[" expr "," expr "]"`, ignoring whitespace.
    pub fn parse(s: &str) -> Result<Self> {
        let mut p = Parser { chars: s.chars().collect(), pos: 0, line: 1, col: 1 };
        let w = p.expr()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.err("trailing input"));
        }
        Ok(w)
    }
}

impl fmt::Display for BracketWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketWord::Leaf(x) => write!(f, "{x}"),
            BracketWord::Bracket(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Parser {
    fn err(&self, message: &str) -> Error {
        Error::Parse { line: self.line, column: self.col, message: message.to_string() }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.bump();
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_ws();
        match self.chars.get(self.pos) {
            Some(&c) if c == want => {
                self.bump();
                Ok(())
            }
            _ => Err(self.err(&format!("expected '{want}'"))),
        }
    }

    fn expr(&mut self) -> Result<BracketWord> {
        self.skip_ws();
        match self.chars.get(self.pos) {
            Some('[') => {
                self.bump();
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(']')?;
                Ok(BracketWord::bracket(a, b))
            }
            Some(c) if c.is_ascii_digit() => {
                let (line, col) = (self.line, self.col);
                let mut digits = String::new();
                while let Some(&c) = self.chars.get(self.pos) {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    digits.push(c);
                    self.bump();
                }
                match digits.parse::<u32>() {
                    Ok(n) if n > 0 => Ok(BracketWord::Leaf(n)),
                    _ => Err(Error::Parse { line, column: col, message: "leaf labels are positive integers".into() }),
                }
            }
            Some(_) => Err(self.err("expected '[' or a leaf label")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

fn add_to(p: &mut AssocPoly, k: Vec<u8>, c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = p.entry(k.clone()).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        p.remove(&k);
    }
}

/// Associative expansion of the left-normed word with the given leaf sequence.
pub fn expand_left_normed(seq: &[u8]) -> Vec<(Vec<u8>, i64)> {
    let mut cur: Vec<(Vec<u8>, i64)> = alloc::vec![(alloc::vec![seq[0]], 1)];
    for &x in &seq[1..] {
        let mut next = Vec::with_capacity(cur.len() * 2);
        for (u, c) in &cur {
            let mut a = u.clone();
            a.push(x);
            next.push((a, *c));
            let mut b = alloc::vec![x];
            b.extend_from_slice(u);
            next.push((b, -*c));
        }
        cur = next;
    }
    cur
}

/// Element of `Lie(m)` in the left-normed basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LieElement {
    arity: usize,
    d: i64,
    terms: BTreeMap<Vec<u8>, Rational>,
}

impl LieElement {
    pub fn zero(arity: usize, d: i64) -> Self {
        LieElement { arity, d, terms: BTreeMap::new() }
    }

    /// The basis word with the given leaf sequence (must start with 1).
    pub fn basis(seq: &[u8], d: i64) -> Self {
        debug_assert_eq!(seq[0], 1);
        let mut terms = BTreeMap::new();
        terms.insert(seq.to_vec(), Rational::one());
        LieElement { arity: seq.len(), d, terms }
    }

    /// The single leaf, arity 1.
    pub fn unit(d: i64) -> Self {
        Self::basis(&[1], d)
    }

    /// The bracket `[1,2]`.
    pub fn bracket(d: i64) -> Self {
        Self::basis(&[1, 2], d)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// Degree `(m - 1)(1 - d)`.
    pub fn degree(&self) -> i64 {
        (self.arity as i64 - 1) * (1 - self.d)
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u8>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the basis word with the given leaf sequence.
    pub fn coeff(&self, seq: &[u8]) -> Rational {
        self.terms.get(seq).cloned().unwrap_or_else(Rational::zero)
    }

    /// Reads off basis coefficients from a multilinear associative Lie polynomial.
    pub fn from_assoc(arity: usize, d: i64, p: &AssocPoly) -> Self {
        let terms = p.iter().filter(|(w, _)| w[0] == 1).map(|(w, c)| (w.clone(), c.clone())).collect();
        LieElement { arity, d, terms }
    }

    /// Associative expansion.
    pub fn to_assoc(&self) -> AssocPoly {
        let mut out = AssocPoly::new();
        for (w, c) in &self.terms {
            for (u, s) in expand_left_normed(w) {
                add_to(&mut out, u, c * int(s));
            }
        }
        out
    }

    /// The linear combination of bracket words in the basis.
    pub fn to_words(&self) -> Vec<(Rational, BracketWord)> {
        self.terms
            .iter()
            .map(|(w, c)| (c.clone(), BracketWord::left_normed(&w.iter().map(|&x| x as u32).collect::<Vec<_>>())))
            .collect()
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            add_to(&mut out.terms, w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> LieElement {
        if c.is_zero() {
            return LieElement::zero(self.arity, self.d);
        }
        let terms = self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect();
        LieElement { arity: self.arity, d: self.d, terms }
    }

    /// Relabels leaves: label `k` becomes `perm[k-1]`. Sign-neutral.
    pub fn relabel(&self, perm: &[u8]) -> Result<LieElement> {
        check_perm(perm, self.arity)?;
        let mut p = AssocPoly::new();
        for (w, c) in &self.terms {
            for (u, s) in expand_left_normed(w) {
                let v: Vec<u8> = u.iter().map(|&x| perm[x as usize - 1]).collect();
                add_to(&mut p, v, c * int(s));
            }
        }
        Ok(LieElement::from_assoc(self.arity, self.d, &p))
    }

    /// Partial composition `self ∘_slot inner`: leaves of `inner` occupy
    /// `slot..slot+k-1`, later leaves of `self` shift up by `k-1`. Sign-neutral.
    pub fn graft(&self, slot: usize, inner: &LieElement) -> Result<LieElement> {
        if slot == 0 || slot > self.arity {
            return Err(Error::IndexOutOfRange { index: slot, bound: self.arity });
        }
        let k = inner.arity;
        let shift = |x: u8| -> u8 {
            if (x as usize) < slot {
                x
            } else {
                x + k as u8 - 1
            }
        };
        let inner_assoc: Vec<(Vec<u8>, Rational)> = inner
            .to_assoc()
            .into_iter()
            .map(|(u, c)| (u.iter().map(|&x| x + slot as u8 - 1).collect(), c))
            .collect();
        let mut p = AssocPoly::new();
        for (w, c) in &self.terms {
            for (u, s) in expand_left_normed(w) {
                let pos = u.iter().position(|&x| x as usize == slot).unwrap();
                let pre: Vec<u8> = u[..pos].iter().map(|&x| shift(x)).collect();
                let post: Vec<u8> = u[pos + 1..].iter().map(|&x| shift(x)).collect();
                let cs = c * int(s);
                for (v, e) in &inner_assoc {
                    let mut word = pre.clone();
                    word.extend_from_slice(v);
                    word.extend_from_slice(&post);
                    add_to(&mut p, word, &cs * e);
                }
            }
        }
        Ok(LieElement::from_assoc(self.arity + k - 1, self.d, &p))
    }
}

pub(crate) fn check_perm(perm: &[u8], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: perm.len() });
    }
    let mut seen = alloc::vec![false; n];
    for &x in perm {
        if x == 0 || x as usize > n || seen[x as usize - 1] {
            return Err(Error::Invalid(format!("not a permutation of 1..={n}")));
        }
        seen[x as usize - 1] = true;
    }
    Ok(())
}

/// Normalizes a linear combination of bracket words over the leaf set `{1..m}`.
pub fn normalize(expr: &[(Rational, BracketWord)], d: i64) -> Result<LieElement> {
    let mut arity = None;
    let mut p = AssocPoly::new();
    for (c, w) in expr {
        let mut leaves = w.leaves();
        leaves.sort_unstable();
        let m = leaves.len();
        if leaves.iter().enumerate().any(|(i, &x)| x as usize != i + 1) {
            if leaves.windows(2).any(|s| s[0] == s[1]) {
                return Err(Error::Invalid("repeated leaf label".into()));
            }
            return Err(Error::InconsistentLeaves);
        }
        match arity {
            None => arity = Some(m),
            Some(a) if a != m => return Err(Error::InconsistentLeaves),
            _ => {}
        }
        for (u, x) in w.expand() {
            add_to(&mut p, u, c * x);
        }
    }
    let arity = arity.ok_or_else(|| Error::Invalid("empty combination has no arity".into()))?;
    Ok(LieElement::from_assoc(arity, d, &p))
}

/// Sign relating a bracket expression read as an iterated composite of
/// corollas in `Lie_d` with `d` even to the same expression read as a plain
/// Lie word. Grafting `k` leaves into the second slot of a bracket costs
/// `(-1)^{k+1}` and placing the leaves costs the sign of the shuffle.
pub fn operadic_sign(w: &BracketWord) -> i64 {
    fn go(w: &BracketWord) -> (i64, Vec<u32>) {
        match w {
            BracketWord::Leaf(x) => (1, alloc::vec![*x]),
            BracketWord::Bracket(a, b) => {
                let (sa, mut la) = go(a);
                let (sb, mut lb) = go(b);
                la.sort_unstable();
                lb.sort_unstable();
                let inversions = la.iter().map(|x| lb.iter().filter(|y| *y < x).count()).sum::<usize>();
                let mut s = sa * sb;
                if (lb.len() + 1 + inversions) % 2 == 1 {
                    s = -s;
                }
                la.extend(lb);
                (s, la)
            }
        }
    }
    go(w).0
}

/// All left-normed basis leaf sequences of `Lie(m)`, in increasing order.
pub fn basis_words(m: usize) -> Vec<Vec<u8>> {
    if m == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut rest: Vec<u8> = (2..=m as u8).collect();
    permutations(&mut rest, 0, &mut |p| {
        let mut w = alloc::vec![1u8];
        w.extend_from_slice(p);
        out.push(w);
    });
    out.sort();
    out
}

/// Calls `f` on every permutation of `v[k..]` (with `v[..k]` fixed).
pub fn permutations(v: &mut Vec<u8>, k: usize, f: &mut impl FnMut(&[u8])) {
    if k >= v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

/// All bracketings of `{1..m}` with each bracket's left child holding the
/// smaller minimal leaf (one representative per antisymmetry class).
pub fn all_bracketings(m: usize) -> Vec<BracketWord> {
    fn build(labels: &[u32]) -> Vec<BracketWord> {
        if labels.len() == 1 {
            return alloc::vec![BracketWord::Leaf(labels[0])];
        }
        let mut out = Vec::new();
        let rest = &labels[1..];
        let n = rest.len();
        // The left part contains labels[0] and any proper subset of the rest.
        for mask in 0..(1u32 << n) - 1 {
            let mut left = alloc::vec![labels[0]];
            let mut right = Vec::new();
            for (i, &x) in rest.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    left.push(x);
                } else {
                    right.push(x);
                }
            }
            for a in build(&left) {
                for b in build(&right) {
                    out.push(BracketWord::bracket(a.clone(), b));
                }
            }
        }
        out
    }
    let labels: Vec<u32> = (1..=m as u32).collect();
    build(&labels)
}

/// Dimension of the span of all normalized bracket words of arity `m`.
pub fn dim_lie(m: usize) -> usize {
    let index: BTreeMap<Vec<u8>, usize> = basis_words(m).into_iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut ech = Echelon::new();
    for w in all_bracketings(m) {
        let x = normalize(&[(Rational::one(), w)], 1).expect("well-formed bracketing");
        let v: Vec<(usize, Rational)> = x.terms.iter().map(|(w, c)| (index[w], c.clone())).collect();
        ech.insert(&v);
    }
    ech.rank()
}

/// Homogeneous Lie polynomial in the letters `1..=alphabet`, not necessarily
/// multilinear, written in a fixed basis of left-normed words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiePoly {
    pub alphabet: u8,
    pub degree: usize,
    /// Left-normed letter sequence to coefficient.
    pub terms: BTreeMap<Vec<u8>, Rational>,
}

impl LiePoly {
    /// Associative expansion.
    pub fn to_assoc(&self) -> AssocPoly {
        let mut out = AssocPoly::new();
        for (w, c) in &self.terms {
            for (u, s) in expand_left_normed(w) {
                add_to(&mut out, u, c * int(s));
            }
        }
        out
    }

    /// The combination as bracket words.
    pub fn to_words(&self) -> Vec<(Rational, BracketWord)> {
        self.terms
            .iter()
            .map(|(w, c)| (c.clone(), BracketWord::left_normed(&w.iter().map(|&x| x as u32).collect::<Vec<_>>())))
            .collect()
    }
}

/// Greedy basis of the degree-`n` part of the free Lie algebra on
/// `alphabet` letters: left-normed words in lexicographic order that are
/// independent of the earlier ones.
pub fn free_lie_basis(alphabet: u8, n: usize) -> Vec<Vec<u8>> {
    let mut words: Vec<Vec<u8>> = alloc::vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &words {
            for a in 1..=alphabet {
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        words = next;
    }
    let mut index: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    let mut ech = Echelon::new();
    let mut basis = Vec::new();
    for w in words {
        let mut v = Vec::new();
        for (u, s) in expand_left_normed(&w) {
            let len = index.len();
            let i = *index.entry(u).or_insert(len);
            v.push((i, int(s)));
        }
        let v = crate::linalg::normalize_sparse(v);
        if ech.insert(&v).is_some() {
            basis.push(w);
        }
    }
    basis
}

/// Expresses a homogeneous associative Lie polynomial in the basis of
/// [`free_lie_basis`]; `None` if it is not a Lie polynomial.
pub fn express_lie(alphabet: u8, n: usize, p: &AssocPoly) -> Option<LiePoly> {
    let basis = free_lie_basis(alphabet, n);
    let mut index: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    let mut cols = Vec::new();
    for w in &basis {
        let mut col = Vec::new();
        for (u, s) in expand_left_normed(w) {
            let len = index.len();
            let i = *index.entry(u).or_insert(len);
            col.push((i, int(s)));
        }
        cols.push(col);
    }
    let mut rhs = Vec::new();
    for (u, c) in p {
        if u.len() != n {
            return None;
        }
        let len = index.len();
        let i = *index.entry(u.clone()).or_insert(len);
        rhs.push((i, c.clone()));
    }
    let rhs = crate::linalg::normalize_sparse(rhs);
    let m = SparseMatrix::from_columns(index.len(), &cols).ok()?;
    let x = solve(&m, &rhs).ok()??;
    let terms = x.into_iter().map(|(j, c)| (basis[j].clone(), c)).collect();
    Some(LiePoly { alphabet, degree: n, terms })
}

/// Maximal order accepted by [`bch_truncated`].
pub const BCH_MAX_ORDER: usize = 6;

fn mul_trunc(a: &AssocPoly, b: &AssocPoly, max: usize) -> AssocPoly {
    let mut out = AssocPoly::new();
    for (u, x) in a {
        for (v, y) in b {
            if u.len() + v.len() <= max {
                let mut w = u.clone();
                w.extend_from_slice(v);
                add_to(&mut out, w, x * y);
            }
        }
    }
    out
}

/// Homogeneous components of `log(e^X e^Y)` in orders `1..=order`, with
/// `X = 1`, `Y = 2`.
pub fn bch_truncated(order: usize) -> Result<Vec<LiePoly>> {
    if order > BCH_MAX_ORDER {
        return Err(Error::BoundExceeded { what: "BCH order", limit: BCH_MAX_ORDER, requested: order });
    }
    let exp_letter = |a: u8| {
        let mut p = AssocPoly::new();
        let mut fact = Rational::one();
        for k in 0..=order {
            if k > 0 {
                fact *= int(k as i64);
            }
            p.insert(alloc::vec![a; k], fact.recip());
        }
        p
    };
    let mut z = mul_trunc(&exp_letter(1), &exp_letter(2), order);
    z.remove(&Vec::new());
    let mut log = AssocPoly::new();
    let mut power = z.clone();
    for k in 1..=order {
        let c = Rational::new(if k % 2 == 1 { 1.into() } else { (-1).into() }, (k as i64).into());
        for (w, x) in &power {
            add_to(&mut log, w.clone(), x * &c);
        }
        power = mul_trunc(&power, &z, order);
    }
    let mut out = Vec::new();
    for n in 1..=order {
        let mut dynkin = AssocPoly::new();
        let scale = Rational::new(1.into(), (n as i64).into());
        for (w, c) in log.iter().filter(|(w, _)| w.len() == n) {
            for (u, s) in expand_left_normed(w) {
                add_to(&mut dynkin, u, c * int(s) * &scale);
            }
        }
        let lie = express_lie(2, n, &dynkin).ok_or_else(|| Error::Invalid("BCH component is not Lie".into()))?;
        out.push(lie);
    }
    Ok(out)
}
