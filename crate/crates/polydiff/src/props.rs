// SPDX-License-Identifier: MIT OR Apache-2.0
//! Seeded randomized checks of the operad axioms and of canonical forms.
//!
//! Each runner draws `cases` instances from a fixed seed and returns the
//! number of instances checked, or a description of the first failure.

use polydiff_core::gra::GraElement;
use polydiff_core::graph::{permutation_sign, OrientedGraph};
use polydiff_core::lie::basis_words;
use polydiff_core::linalg::{int, Rational};
use polydiff_core::poly::{OElement, OLie, RawComponent};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

/// Outcome of a runner: instances checked, or the first counterexample.
pub type PropResult = Result<usize, String>;

fn perm(rng: &mut StdRng, n: usize) -> Vec<u8> {
    let mut p: Vec<u8> = (1..=n as u8).collect();
    p.shuffle(rng);
    p
}

fn coeff(rng: &mut StdRng) -> Rational {
    int([-2, -1, 1, 2][rng.gen_range(0..4)])
}

fn gra_graph(rng: &mut StdRng, d: i64, n: usize, max_edges: usize) -> OrientedGraph {
    let mut edges = Vec::new();
    if n >= 2 {
        for _ in 0..rng.gen_range(0..=max_edges) {
            let a = rng.gen_range(1..=n as u8);
            let mut b = rng.gen_range(1..=n as u8 - 1);
            if b >= a {
                b += 1;
            }
            edges.push((a, b));
        }
    }
    OrientedGraph::new(d, n, edges).expect("tadpole-free by construction")
}

fn gra_el(rng: &mut StdRng, d: i64, n: usize) -> GraElement {
    let mut x = GraElement::zero(n, d);
    for _ in 0..rng.gen_range(1..=2) {
        x.add_graph(&gra_graph(rng, d, n, 3), coeff(rng));
    }
    x
}

/// Element whose graphs all have `e` edges, so its degree is defined.
fn gra_homogeneous(rng: &mut StdRng, d: i64, n: usize, e: usize) -> GraElement {
    let mut x = GraElement::zero(n, d);
    for _ in 0..rng.gen_range(1..=2) {
        let mut edges = Vec::new();
        for _ in 0..e {
            let a = rng.gen_range(1..=n as u8);
            let b = if a == 1 { 2 } else { 1 };
            edges.push(if rng.gen() { (a, b) } else { (b, a) });
        }
        x.add_graph(&OrientedGraph::new(d, n, edges).expect("tadpole-free"), coeff(rng));
    }
    x
}

/// Block permutations moving `p` and `q` through `a ∘_i b` with `|a| = 3`.
fn block_perms(p: &[u8], q: &[u8], i: usize, n2: usize) -> (usize, Vec<u8>, Vec<u8>) {
    let pi = p[i - 1] as usize;
    let shift = |u: usize, at: usize| if u < at { u } else { u + n2 - 1 };
    let mut outer = vec![0u8; 3 + n2 - 1];
    for u in 1..=3usize {
        if u == i {
            for w in 0..n2 {
                outer[i + w - 1] = (pi + w) as u8;
            }
        } else {
            outer[shift(u, i) - 1] = shift(p[u - 1] as usize, pi) as u8;
        }
    }
    let mut inner: Vec<u8> = (1..=(3 + n2 - 1) as u8).collect();
    for w in 1..=n2 {
        inner[i + w - 2] = (i + q[w - 1] as usize - 1) as u8;
    }
    (pi, outer, inner)
}

fn fail<T: std::fmt::Debug>(what: &str, case: usize, detail: T) -> String {
    format!("{what}, instance {case}: {detail:?}")
}

fn ok<T>(r: polydiff_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Unit, equivariance and both associativity axioms in `Gra_d`, `d ∈ {1,2}`.
pub fn gra_axioms(seed: u64, cases: usize) -> PropResult {
    let mut rng = StdRng::seed_from_u64(seed);
    for case in 0..cases {
        let d = rng.gen_range(1..=2);
        // Unit.
        let n = rng.gen_range(1..=4);
        let x = gra_el(&mut rng, d, n);
        let u = GraElement::unit(d);
        for i in 1..=n {
            if ok(x.compose(i, &u))? != x {
                return Err(fail("Gra right unit", case, (i, &x)));
            }
        }
        if ok(u.compose(1, &x))? != x {
            return Err(fail("Gra left unit", case, &x));
        }
        // Sequential associativity.
        let (a, b, c) = (gra_el(&mut rng, d, 3), gra_el(&mut rng, d, 2), gra_el(&mut rng, d, 2));
        let i = rng.gen_range(1..=3);
        let j = i + rng.gen_range(0..2);
        let lhs = ok(ok(a.compose(i, &b))?.compose(j, &c))?;
        let rhs = ok(a.compose(i, &ok(b.compose(j - i + 1, &c))?))?;
        if lhs != rhs {
            return Err(fail("Gra sequential associativity", case, (i, j)));
        }
        // Parallel associativity, with the Koszul sign of odd edges for even d.
        let (eb, ec) = (rng.gen_range(0..3), rng.gen_range(0..3));
        let (b, c) = (gra_homogeneous(&mut rng, d, 2, eb), gra_homogeneous(&mut rng, d, 2, ec));
        let lhs = ok(ok(a.compose(1, &b))?.compose(4, &c))?;
        let rhs = ok(ok(a.compose(3, &c))?.compose(1, &b))?;
        let sign = if d % 2 == 0 && eb % 2 == 1 && ec % 2 == 1 { int(-1) } else { int(1) };
        if lhs != rhs.scale(&sign) {
            return Err(fail("Gra parallel associativity", case, (eb, ec)));
        }
        // Equivariance.
        let (p, q, i) = (perm(&mut rng, 3), perm(&mut rng, 2), rng.gen_range(1..=3));
        let (pi, outer, inner) = block_perms(&p, &q, i, 2);
        let ab = ok(a.compose(i, &b))?;
        if ok(ok(a.s_action(&p))?.compose(pi, &b))? != ok(ab.s_action(&outer))? {
            return Err(fail("Gra outer equivariance", case, (&p, i)));
        }
        if ok(a.compose(i, &ok(b.s_action(&q))?))? != ok(ab.s_action(&inner))? {
            return Err(fail("Gra inner equivariance", case, (&q, i)));
        }
    }
    Ok(cases)
}

/// Single-term element with up to `max_comps` components of arity 2 or 3.
fn o_term(rng: &mut StdRng, o: &OLie, n: usize, max_comps: usize) -> (OElement, i64) {
    let mut raw: Vec<RawComponent> = Vec::new();
    let mut deg = 0;
    for _ in 0..rng.gen_range(0..=max_comps) {
        let m = rng.gen_range(2..=3);
        let words = basis_words(m);
        let w = &words[rng.gen_range(0..words.len())];
        let attach: Vec<u8> = (0..m).map(|_| rng.gen_range(1..=n as u8)).collect();
        raw.push(o.raw(w, &attach));
        deg += (m as i64 - 1) * (1 - o.d());
    }
    let c = coeff(rng);
    (o.element(n, &[(c, raw)]).expect("in range"), deg)
}

fn o_el(rng: &mut StdRng, o: &OLie, n: usize) -> OElement {
    o_term(rng, o, n, 2).0.add(&o_term(rng, o, n, 2).0)
}

/// Unit, equivariance and both associativity axioms in `𝒪(Lie_d)`, `d ∈ {1,2}`.
pub fn olie_axioms(seed: u64, cases: usize) -> PropResult {
    let mut rng = StdRng::seed_from_u64(seed);
    for case in 0..cases {
        let d = rng.gen_range(1..=2);
        let o = OLie::lie(d);
        let n = rng.gen_range(1..=3);
        let x = o_el(&mut rng, &o, n);
        let u = OElement::unit(d);
        for i in 1..=n {
            if ok(o.compose(&x, i, &u))? != x {
                return Err(fail("O(Lie) right unit", case, i));
            }
        }
        if ok(o.compose(&u, 1, &x))? != x {
            return Err(fail("O(Lie) left unit", case, n));
        }
        // Sequential associativity.
        let a = o_el(&mut rng, &o, 2);
        let b = o_term(&mut rng, &o, 2, 2).0;
        let c = o_term(&mut rng, &o, 2, 1).0;
        let i = rng.gen_range(1..=2);
        let j = i + rng.gen_range(0..2);
        let lhs = ok(o.compose(&ok(o.compose(&a, i, &b))?, j, &c))?;
        let rhs = ok(o.compose(&a, i, &ok(o.compose(&b, j - i + 1, &c))?))?;
        if lhs != rhs {
            return Err(fail("O(Lie) sequential associativity", case, (d, i, j)));
        }
        // Parallel associativity with the Koszul sign.
        let a = o_el(&mut rng, &o, 3);
        let (b, db) = o_term(&mut rng, &o, 2, 2);
        let (c, dc) = o_term(&mut rng, &o, 2, 2);
        let lhs = ok(o.compose(&ok(o.compose(&a, 1, &b))?, 4, &c))?;
        let rhs = ok(o.compose(&ok(o.compose(&a, 3, &c))?, 1, &b))?;
        let sign = if (db * dc).rem_euclid(2) == 1 { int(-1) } else { int(1) };
        if lhs != rhs.scale(&sign) {
            return Err(fail("O(Lie) parallel associativity", case, (d, db, dc)));
        }
        // Equivariance.
        let b = o_el(&mut rng, &o, 2);
        let (p, q, i) = (perm(&mut rng, 3), perm(&mut rng, 2), rng.gen_range(1..=3));
        let (pi, outer, inner) = block_perms(&p, &q, i, 2);
        let ab = ok(o.compose(&a, i, &b))?;
        if ok(o.compose(&ok(o.s_action(&a, &p))?, pi, &b))? != ok(o.s_action(&ab, &outer))? {
            return Err(fail("O(Lie) outer equivariance", case, (&p, i)));
        }
        if ok(o.compose(&a, i, &ok(o.s_action(&b, &q))?))? != ok(o.s_action(&ab, &inner))? {
            return Err(fail("O(Lie) inner equivariance", case, (&q, i)));
        }
    }
    Ok(cases)
}

/// Relabels, flips some edge directions and rotates the edge list; returns
/// the graph and the sign relating it to the input.
fn twist(rng: &mut StdRng, g: &OrientedGraph, p: &[u8]) -> Result<(OrientedGraph, i8), String> {
    let h = ok(g.relabel(p))?;
    let mut edges = h.edges().to_vec();
    let mut sign: i8 = if g.d_odd() { permutation_sign(p) } else { 1 };
    for e in edges.iter_mut() {
        if rng.gen() {
            *e = (e.1, e.0);
            if g.d_odd() {
                sign = -sign;
            }
        }
    }
    if !edges.is_empty() {
        let k = edges.len();
        let rot = rng.gen_range(0..k);
        edges.rotate_left(rot);
        // A rotation by r of k items has parity r(k-1).
        if !g.d_odd() && (rot * (k - 1)) % 2 == 1 {
            sign = -sign;
        }
    }
    Ok((ok(OrientedGraph::new(g.d(), g.n_vertices(), edges))?, sign))
}

/// Canonical forms agree across random relabellings with the predicted
/// signs, and relabelling signs compose: `g·p·q` and `g·(q∘p)` agree.
pub fn relabelling(seed: u64, cases: usize) -> PropResult {
    let mut rng = StdRng::seed_from_u64(seed);
    for case in 0..cases {
        let d = rng.gen_range(1..=2);
        let n = rng.gen_range(2..=6);
        let g = gra_graph(&mut rng, d, n, 8);
        let c = g.canonicalize();
        let p = perm(&mut rng, n);
        let (h, s) = twist(&mut rng, &g, &p)?;
        let ch = h.canonicalize();
        if ch.canonical != c.canonical || c.sign != s * ch.sign {
            return Err(fail("canonical form congruence", case, g.edges()));
        }
        if c.canonical.canonicalize().sign != c.sign.abs() {
            return Err(fail("canonical form is a fixed point", case, g.edges()));
        }
        // Composite relabelling: vertex k goes to p[k-1], then to q[p[k-1]-1].
        let q = perm(&mut rng, n);
        let qp: Vec<u8> = p.iter().map(|&k| q[k as usize - 1]).collect();
        let two = ok(ok(g.relabel(&p))?.relabel(&q))?;
        let one = ok(g.relabel(&qp))?;
        if two != one {
            return Err(fail("relabellings compose", case, (&p, &q)));
        }
        if d % 2 == 1 && permutation_sign(&qp) != permutation_sign(&p) * permutation_sign(&q) {
            return Err(fail("permutation signs multiply", case, (&p, &q)));
        }
        let gp = GraElement::from_graph(&g, int(1));
        let lhs = ok(ok(gp.s_action(&p))?.s_action(&q))?;
        if lhs != ok(gp.s_action(&qp))? {
            return Err(fail("S_n action composes", case, (&p, &q)));
        }
    }
    Ok(cases)
}
