// SPDX-License-Identifier: MIT OR Apache-2.0
//! Registered verification checks, grouped into suites.
//!
//! A check returns `Ok(detail)` on success and `Err(diff)` on failure. The
//! worked examples live here as named constructors so the acceptance test
//! and the command line read the same data.

use std::fmt;

use polydiff_core::def::{
    build_slice, cohomology_rank, def_differential, gc_differential, gc_differential_el, gc_projected_differential,
    is_exact, oc::f_sign, symmetrize, Complex, DefLie, DefOc, GcElement, GraphComplex,
};
use polydiff_core::gra::{lie_to_gra, GraElement};
use polydiff_core::graph::{enumerate_graphs, OrientedGraph};
use polydiff_core::gutt::{
    gutt_mod_i_series, parallel_edges, sigma, sigma_inv, skew_symmetrize_series, star, FPLieAlgebra, Gen, HPoly,
};
use polydiff_core::lie::{basis_words, bch_truncated, dim_lie, AssocPoly, BracketWord, LieElement};
use polydiff_core::linalg::{int, rat, Rational};
use polydiff_core::poly::{quotient_to_gra, OAss, OElement, OLie, PolyOperad, RawComponent};
use polydiff_core::poly::ComponentOperad;

use crate::par::par_map;
use crate::props;

/// Check suites selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Operads,
    Complexes,
    Gutt,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Operads => "operads",
            Suite::Complexes => "complexes",
            Suite::Gutt => "gutt",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub type Outcome = Result<String, String>;

/// A named, deterministic check.
#[derive(Clone, Copy)]
pub struct Check {
    pub id: &'static str,
    pub suite: Suite,
    pub name: &'static str,
    pub run: fn() -> Outcome,
}

/// Seeds of the randomized checks.
pub const SEED_GRA: u64 = 0x6772_61;
pub const SEED_OLIE: u64 = 0x6f6c_6965;
pub const SEED_RELABEL: u64 = 0x7265_6c;
/// Instance counts of the randomized checks.
pub const AXIOM_CASES: usize = 200;
pub const RELABEL_CASES: usize = 500;

/// Bounds of the differential checks.
pub const GC_CHECK_VERTICES: usize = 5;
pub const GC_CHECK_EDGES: usize = 8;
pub const DEF_CHECK_ARITY: usize = 3;
pub const DEF_CHECK_INTERNAL: usize = 3;

fn expect<T: PartialEq + fmt::Debug>(got: T, want: T, what: &str) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn core<T>(r: polydiff_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub fn graph(d: i64, n: usize, edges: &[(u8, u8)]) -> OrientedGraph {
    OrientedGraph::new(d, n, edges.to_vec()).expect("valid graph")
}

fn gra(d: i64, n: usize, edges: &[(u8, u8)]) -> GraElement {
    GraElement::from_graph(&graph(d, n, edges), int(1))
}

/// `Gra_d`: the path with edges `(1,2),(1,3)` composed at 1 with the edge.
pub fn gra_example(d: i64) -> (GraElement, GraElement) {
    let got = gra(d, 3, &[(1, 2), (1, 3)]).compose(1, &lie_to_gra(d)).expect("in range");
    let mut want = GraElement::zero(4, d);
    for edges in [
        [(1, 3), (1, 4), (1, 2)],
        [(2, 3), (1, 4), (1, 2)],
        [(1, 3), (2, 4), (1, 2)],
        [(2, 3), (2, 4), (1, 2)],
    ] {
        want.add_graph(&graph(d, 4, &edges), int(1));
    }
    (got, want)
}

/// Element of a polydifferential operad from `(coeff, [(word, attachments)])`.
pub fn o_element<P: ComponentOperad>(o: &PolyOperad<P>, n: usize, terms: &[(i64, &[(&str, &[u8])])]) -> OElement {
    let raw: Vec<(Rational, Vec<RawComponent>)> = terms
        .iter()
        .map(|(c, comps)| (int(*c), comps.iter().map(|(w, a)| o.parse_component(w, a).expect("valid word")).collect()))
        .collect();
    o.element(n, &raw).expect("valid element")
}

/// `𝒪(Lie_d)`: the corolla composed with itself in slot 2.
pub fn example_corolla(d: i64) -> (OElement, OElement) {
    let o = OLie::lie(d);
    let c = o.corolla();
    let got = o.compose(&c, 2, &c).expect("in range");
    let want = o_element(
        &o,
        3,
        &[
            (1, &[("[1,[2,3]]", &[1, 2, 3])]),
            (1, &[("[1,2]", &[1, 2]), ("[1,2]", &[2, 3])]),
            (1, &[("[1,2]", &[1, 3]), ("[1,2]", &[2, 3])]),
        ],
    );
    (got, want)
}

/// `𝒪(Lie_2)`: a term with a doubly attached component, composed at 1 with the corolla.
pub fn example_double_attachment() -> (OElement, OElement) {
    let o = OLie::lie(2);
    let a = o_element(&o, 3, &[(1, &[("[1,2]", &[3, 3]), ("[1,2]", &[1, 2])])]);
    let got = o.compose(&a, 1, &o.corolla()).expect("in range");
    let want = o_element(
        &o,
        4,
        &[
            (1, &[("[1,2]", &[4, 4]), ("[[1,2],3]", &[1, 2, 3])]),
            (1, &[("[1,2]", &[4, 4]), ("[1,2]", &[1, 3]), ("[1,2]", &[1, 2])]),
            (1, &[("[1,2]", &[4, 4]), ("[1,2]", &[2, 3]), ("[1,2]", &[1, 2])]),
        ],
    );
    (got, want)
}

/// Image of the Jacobi relator in `Gra_d`.
pub fn gra_jacobi(d: i64) -> GraElement {
    let e = lie_to_gra(d);
    let t = e.compose(2, &e).expect("in range");
    t.add(&t.s_action(&[2, 3, 1]).expect("perm")).add(&t.s_action(&[3, 1, 2]).expect("perm"))
}

/// Image of the Jacobi relator in `𝒪(Lie_d)`.
pub fn olie_jacobi(d: i64) -> OElement {
    let o = OLie::lie(d);
    let c = o.corolla();
    let t = o.compose(&c, 2, &c).expect("in range");
    t.add(&o.s_action(&t, &[2, 3, 1]).expect("perm")).add(&o.s_action(&t, &[3, 1, 2]).expect("perm"))
}

/// Associator residue in `𝒪(Ass)` and the expected two-term difference.
pub fn associator_residue() -> (OElement, OElement) {
    let o = OAss::ass();
    let want = o_element(&o, 3, &[(1, &[("1 2", &[1, 2]), ("1 2", &[1, 3])]), (-1, &[("1 2", &[1, 3]), ("1 2", &[2, 3])])]);
    (o.ass_remark_check(), want)
}

pub fn theta() -> OrientedGraph {
    graph(1, 2, &[(1, 2), (1, 2), (1, 2)])
}

pub fn tetrahedron() -> OrientedGraph {
    graph(2, 4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
}

pub fn directed_triangle() -> OrientedGraph {
    graph(1, 3, &[(1, 2), (2, 3), (3, 1)])
}

/// The 5-wheel and its correction graph, edges in the displayed order.
pub fn w5_parts() -> (OrientedGraph, OrientedGraph) {
    let wheel = graph(2, 6, &[(1, 2), (2, 3), (3, 4), (5, 4), (5, 1), (6, 2), (6, 3), (4, 6), (6, 5), (6, 1)]);
    let correction = graph(2, 6, &[(1, 2), (2, 3), (3, 4), (5, 4), (5, 1), (4, 1), (2, 5), (5, 6), (6, 2), (6, 3)]);
    (wheel, correction)
}

pub fn w5() -> GcElement {
    let (wheel, correction) = w5_parts();
    GcElement::from_graph(&wheel).add(&GcElement::from_graph(&correction).scale(&rat(5, 2)))
}

fn assoc(expr: &[(Rational, &str)]) -> AssocPoly {
    let mut p = AssocPoly::new();
    for (c, s) in expr {
        for (u, x) in BracketWord::parse(s).expect("valid").expand() {
            let e = p.entry(u).or_insert_with(|| int(0));
            *e += c * x;
        }
    }
    p.retain(|_, x| *x != int(0));
    p
}

// ---- operads ----

fn op_gra_example() -> Outcome {
    for d in [1, 2] {
        let (got, want) = gra_example(d);
        expect(&got, &want, &format!("d = {d}"))?;
        expect(got.len(), 4, "term count")?;
    }
    Ok("4 terms, d = 1, 2".into())
}

fn op_corolla_example() -> Outcome {
    for d in 1..=4 {
        let (got, want) = example_corolla(d);
        expect(&got, &want, &format!("d = {d}"))?;
        expect(got.n_pictures(), 3, "term count")?;
    }
    Ok("3 terms, d = 1..4".into())
}

fn op_double_attachment_example() -> Outcome {
    let (got, want) = example_double_attachment();
    expect(&got, &want, "d = 2")?;
    expect(got.n_pictures(), 3, "term count")?;
    Ok("3 terms, d = 2".into())
}

fn op_jacobi() -> Outcome {
    for d in [1, 2] {
        ensure(gra_jacobi(d).is_zero(), format!("Gra_{d} image nonzero"))?;
        ensure(olie_jacobi(d).is_zero(), format!("O(Lie_{d}) image nonzero"))?;
    }
    Ok("zero in Gra_d and O(Lie_d), d = 1, 2".into())
}

fn op_associator() -> Outcome {
    let (got, want) = associator_residue();
    expect(&got, &want, "residue")?;
    expect(got.len(), 2, "term count")?;
    Ok("2 terms, coefficients +1, -1".into())
}

fn op_lie_dims() -> Outcome {
    let mut fact = 1;
    for m in 1..=6usize {
        if m > 1 {
            fact *= m - 1;
        }
        expect(dim_lie(m), fact, &format!("dim Lie({m})"))?;
        expect(basis_words(m).len(), fact, &format!("basis of Lie({m})"))?;
    }
    Ok("1, 1, 2, 6, 24, 120".into())
}

fn op_bch() -> Outcome {
    let b = core(bch_truncated(3))?;
    expect(b[0].to_assoc(), assoc(&[(int(1), "1"), (int(1), "2")]), "order 1")?;
    expect(b[1].to_assoc(), assoc(&[(rat(1, 2), "[1,2]")]), "order 2")?;
    expect(b[2].to_assoc(), assoc(&[(rat(1, 12), "[1,[1,2]]"), (rat(1, 12), "[2,[2,1]]")]), "order 3")?;
    Ok("X+Y, 1/2 [X,Y], 1/12 ([X,[X,Y]] + [Y,[Y,X]])".into())
}

fn op_bracket_parser() -> Outcome {
    for s in ["1", "[1,2]", "[[1,2],[3,[4,5]]]", "[1,[[2,3],4]]"] {
        expect(core(BracketWord::parse(s))?.to_string(), s.to_string(), "round trip")?;
    }
    match BracketWord::parse("[1,\n 2") {
        Err(polydiff_core::Error::Parse { line: 2, column: 3, .. }) => {}
        other => return Err(format!("unterminated expression: {other:?}")),
    }
    Ok("round trip and error location".into())
}

fn op_quotient() -> Outcome {
    for d in [1, 2] {
        let o = OLie::lie(d);
        let c = o.corolla();
        expect(quotient_to_gra(&c), lie_to_gra(d), "corolla")?;
        let three = o.single_component(&LieElement::basis(&[1, 2, 3], d));
        ensure(quotient_to_gra(&three).is_zero(), "3-slot component survives")?;
        let lhs = quotient_to_gra(&core(o.compose(&c, 2, &c))?);
        let rhs = core(lie_to_gra(d).compose(2, &lie_to_gra(d)))?;
        expect(lhs, rhs, "composite")?;
    }
    Ok("corolla to edge, composites agree".into())
}

fn op_gra_axioms() -> Outcome {
    let n = props::gra_axioms(SEED_GRA, AXIOM_CASES)?;
    Ok(format!("{n} random instances"))
}

fn op_olie_axioms() -> Outcome {
    let n = props::olie_axioms(SEED_OLIE, AXIOM_CASES)?;
    Ok(format!("{n} random instances"))
}

fn op_relabelling() -> Outcome {
    let n = props::relabelling(SEED_RELABEL, RELABEL_CASES)?;
    Ok(format!("{n} random relabellings"))
}

// ---- complexes ----

/// Connected graphs with `2 ≤ v ≤ max_v`, `v-1 ≤ e ≤ max_e`, by slice.
fn graph_slices(max_v: usize, max_e: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for v in 2..=max_v {
        for e in v - 1..=max_e {
            out.push((v, e));
        }
    }
    out
}

/// `δ² = 0` on every generator of every slice, in parallel over slices;
/// returns the number of generators.
pub fn gc_square_zero(d: i64, trivalent: bool, max_v: usize, max_e: usize) -> Result<usize, String> {
    let min = if trivalent { 3 } else { 1 };
    let counts = par_map(graph_slices(max_v, max_e), |(v, e)| -> Result<usize, String> {
        let gens = core(enumerate_graphs(v, e, d, min, true))?;
        for g in &gens {
            let x = GcElement::from_graph(&g.canonical);
            let dx = if trivalent { gc_projected_differential(&x) } else { gc_differential_el(&x) };
            for h in dx.terms().keys() {
                expect((h.n_vertices(), h.n_edges()), (v + 1, e + 1), "bidegree of δ")?;
                expect(h.degree(), g.canonical.degree() + 1, "degree of δ")?;
            }
            let ddx = if trivalent { gc_projected_differential(&dx) } else { gc_differential_el(&dx) };
            ensure(ddx.is_zero(), format!("δ² ≠ 0 on {:?}, d = {d}", g.canonical.edges()))?;
        }
        Ok(gens.len())
    });
    counts.into_iter().sum()
}

fn cx_fcgc_square() -> Outcome {
    let mut parts = Vec::new();
    for d in [1, 2] {
        parts.push(format!("d={d}: {}", gc_square_zero(d, false, GC_CHECK_VERTICES, GC_CHECK_EDGES)?));
    }
    Ok(format!("generators with v ≤ {GC_CHECK_VERTICES}, e ≤ {GC_CHECK_EDGES}: {}", parts.join(", ")))
}

fn cx_gc_square() -> Outcome {
    let mut parts = Vec::new();
    for d in [1, 2] {
        parts.push(format!("d={d}: {}", gc_square_zero(d, true, GC_CHECK_VERTICES, GC_CHECK_EDGES)?));
    }
    Ok(format!("generators with v ≤ {GC_CHECK_VERTICES}, e ≤ {GC_CHECK_EDGES}: {}", parts.join(", ")))
}

fn def_slices() -> Vec<(i64, usize, usize)> {
    let mut out = Vec::new();
    for d in [1, 2] {
        for n in 2..=DEF_CHECK_ARITY {
            for k in 0..=DEF_CHECK_INTERNAL {
                out.push((d, n, k));
            }
        }
    }
    out
}

/// On every basis element of the Def slices: `δ² = 0`, `δ` raises the
/// degree by one, and `F∘δ = δ∘F`. Returns the number of generators.
pub fn def_checks(chain_map: bool) -> Result<usize, String> {
    let counts = par_map(def_slices(), |(d, n, k)| -> Result<usize, String> {
        let c = DefOc::new(d);
        let s = core(build_slice(&c, (n, k)))?;
        for x in &s.basis {
            let y = def_differential(&c, x);
            for t in y.terms().keys() {
                expect(c.term_degree(n + 1, t), c.degree((n, k)) + 1, "degree of δ")?;
            }
            if chain_map {
                let lhs = c.map_f(&y);
                let rhs = gc_differential_el(&c.map_f(x));
                ensure(lhs == rhs, format!("F∘δ ≠ δ∘F, d = {d}, slice ({n},{k})"))?;
            } else {
                ensure(def_differential(&c, &y).is_zero(), format!("δ² ≠ 0, d = {d}, slice ({n},{k})"))?;
            }
        }
        Ok(s.basis.len())
    });
    counts.into_iter().sum()
}

fn cx_def_square() -> Outcome {
    let n = def_checks(false)?;
    Ok(format!("{n} generators, n ≤ {DEF_CHECK_ARITY}, k ≤ {DEF_CHECK_INTERNAL}, d = 1, 2"))
}

fn cx_chain_map() -> Outcome {
    let n = def_checks(true)?;
    Ok(format!("{n} generators, n ≤ {DEF_CHECK_ARITY}, k ≤ {DEF_CHECK_INTERNAL}, d = 1, 2"))
}

fn cx_w3() -> Outcome {
    let t = tetrahedron();
    let c = GraphComplex::gc(2);
    let x = GcElement::from_graph(&t);
    ensure(gc_differential(&t).is_zero(), "δ(w₃) ≠ 0")?;
    ensure(gc_projected_differential(&x).is_zero(), "projected δ(w₃) ≠ 0")?;
    ensure(!core(is_exact(&c, &x, (4, 6)))?, "w₃ is exact")?;
    expect(t.degree(), 0, "degree")?;
    let r = core(cohomology_rank(&c, (4, 6)))?;
    ensure(r.cohomology >= 1, "H at (4,6) vanishes")?;
    Ok(format!("closed, not exact, degree 0, H(4,6) = {}", r.cohomology))
}

fn cx_w5() -> Outcome {
    let (wheel, _) = w5_parts();
    ensure(!gc_differential(&wheel).is_zero(), "bare wheel is closed")?;
    ensure(gc_differential_el(&w5()).is_zero(), "δ(w₅) ≠ 0")?;
    ensure(gc_projected_differential(&w5()).is_zero(), "projected δ(w₅) ≠ 0")?;
    Ok("δ(wheel + 5/2 correction) = 0".into())
}

fn cx_theta() -> Outcome {
    let t = theta();
    let x = GcElement::from_graph(&t);
    for c in [GraphComplex::fcgc(1), GraphComplex::gc(1)] {
        ensure(c.differential(&x).is_zero(), format!("δθ ≠ 0 in {}", c.id()))?;
        ensure(!core(is_exact(&c, &x, (2, 3)))?, format!("θ exact in {}", c.id()))?;
        expect(c.degree((2, 3)), 1, "degree")?;
    }
    Ok("closed, degree 1, not exact".into())
}

fn cx_theta_def() -> Outcome {
    let c = DefOc::new(1);
    let x = c.theta();
    expect(c.map_f(&x), GcElement::from_graph(&theta()), "F(theta element)")?;
    for t in x.terms().keys() {
        expect(c.term_degree(2, t), 1, "degree")?;
    }
    let lift = core(c.closed_lift(&x, (2, 3)))?.ok_or("no closed lift")?;
    ensure(def_differential(&c, &lift).is_zero(), "lift not closed")?;
    expect(c.map_f(&lift), GcElement::from_graph(&theta()), "F(lift)")?;
    Ok(format!("closed preimage with {} terms, degree 1", lift.len()))
}

fn cx_tetra_def() -> Outcome {
    let c = DefOc::new(2);
    let o = c.operad();
    let comps: Vec<_> = tetrahedron().edges().iter().map(|&(a, b)| o.raw(&[1, 2], &[a, b])).collect();
    let x = symmetrize(&c, &core(o.element(4, &[(int(1), comps)]))?);
    for t in x.terms().keys() {
        expect(c.term_degree(4, t), 0, "degree")?;
    }
    expect(c.map_f(&x), GcElement::from_graph(&tetrahedron()).scale(&int(f_sign(0))), "F(preimage)")?;
    Ok("degree 0, maps to the tetrahedron".into())
}

fn cx_triangle() -> Outcome {
    let t = directed_triangle();
    ensure(gc_differential(&t).is_zero(), "δ(triangle) ≠ 0")?;
    let s = core(build_slice(&GraphComplex::fcgc(1), (3, 3)))?;
    let x = GcElement::from_graph(&t);
    ensure(s.basis.contains(&x) || s.basis.contains(&x.scale(&int(-1))), "triangle not a basis element")?;
    Ok("closed in slice (3,3)".into())
}

fn cx_def_lie() -> Outcome {
    let mut parts = Vec::new();
    for d in [1, 2] {
        let c = DefLie::new(d);
        let mut total = 0;
        for n in 2..=5 {
            total += core(cohomology_rank(&c, (n, n - 1)))?.cohomology;
        }
        expect(total, 1, &format!("total cohomology, d = {d}"))?;
        let b = c.bracket_class();
        expect(b.clone(), LieElement::bracket(d), "class")?;
        ensure(def_differential(&c, &b).is_zero(), "bracket not closed")?;
        expect(core(cohomology_rank(&c, (2, 1)))?.cohomology, 1, "H at arity 2")?;
        parts.push(format!("d={d}: 1"));
    }
    Ok(format!("arity ≤ 5, {}", parts.join(", ")))
}

// ---- gutt ----

fn mono(g: &[Gen]) -> HPoly {
    HPoly::monomial(g)
}

fn hterm(m: &[Gen], h: u32, c: Rational) -> HPoly {
    let mut p = HPoly::zero();
    p.add_term(m.to_vec(), h, c);
    p
}

/// Sorted monomials of degree `1..=max` in `n` generators.
pub fn monomials(n: u8, max: usize) -> Vec<Vec<Gen>> {
    let mut out = Vec::new();
    let mut level: Vec<Vec<Gen>> = vec![vec![]];
    for _ in 0..max {
        let mut next = Vec::new();
        for m in &level {
            for g in m.last().copied().unwrap_or(1)..=n {
                let mut x = m.clone();
                x.push(g);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

fn gutt_first_order() -> Outcome {
    let h = FPLieAlgebra::heisenberg();
    let got = star(&h, &mono(&[1]), &mono(&[2]));
    expect(got, mono(&[1, 2]).add(&hterm(&[3], 1, rat(1, 2))), "x ∗ y")?;
    Ok("x ∗ y = x⊙y + (h/2) z".into())
}

fn gutt_commutator() -> Outcome {
    for alg in [FPLieAlgebra::abelian(3), FPLieAlgebra::heisenberg(), FPLieAlgebra::affine()] {
        let n = alg.dim() as Gen;
        for i in 1..=n {
            for j in 1..=n {
                let xy = star(&alg, &mono(&[i]), &mono(&[j]));
                let c = xy.sub(&star(&alg, &mono(&[j]), &mono(&[i])));
                let br = HPoly::linear(&alg.bracket(i, j)).shift_hbar(1);
                expect(&c, &br, &format!("[t{i}, t{j}]"))?;
                expect(xy.hbar_part(1), br.scale(&rat(1, 2)), "first order")?;
            }
        }
    }
    Ok("abelian(3), Heisenberg, affine".into())
}

fn gutt_associative() -> Outcome {
    let mut count = 0;
    for alg in [FPLieAlgebra::heisenberg(), FPLieAlgebra::affine()] {
        let ms = monomials(alg.dim() as u8, 3);
        let results = par_map(ms.clone(), |a| -> Result<usize, String> {
            let a = mono(&a);
            for b in &ms {
                let ab = star(&alg, &a, &mono(b));
                for c in &ms {
                    let l = star(&alg, &ab, &mono(c));
                    let r = star(&alg, &a, &star(&alg, &mono(b), &mono(c)));
                    ensure(l == r, format!("({a:?} ∗ {b:?}) ∗ {c:?}"))?;
                }
            }
            Ok(ms.len() * ms.len())
        });
        count += results.into_iter().sum::<Result<usize, String>>()?;
    }
    Ok(format!("{count} triples of degree ≤ 3 monomials"))
}

fn gutt_round_trip() -> Outcome {
    let mut count = 0;
    for alg in [FPLieAlgebra::abelian(3), FPLieAlgebra::heisenberg(), FPLieAlgebra::affine()] {
        for m in monomials(alg.dim() as u8, 4) {
            let p = mono(&m);
            expect(sigma_inv(&alg, &sigma(&alg, &p)), p, "σ⁻¹σ")?;
            count += 1;
        }
    }
    Ok(format!("{count} monomials of degree ≤ 4"))
}

fn gutt_x_yy() -> Outcome {
    let h = FPLieAlgebra::heisenberg();
    let got = star(&h, &mono(&[1]), &mono(&[2, 2]));
    expect(got, mono(&[1, 2, 2]).add(&hterm(&[2, 3], 1, int(1))), "x ∗ y²")?;
    Ok("x ∗ y² = x⊙y² + h y⊙z".into())
}

fn gutt_series() -> Outcome {
    let s = core(gutt_mod_i_series(8))?;
    let fact = |k: usize| (1..=k as i64).product::<i64>();
    for (k, x) in s.iter().enumerate() {
        expect(x.coeff(&parallel_edges(k)), rat(1, fact(k)), &format!("k = {k}"))?;
    }
    let sk = core(skew_symmetrize_series(&s))?;
    for (k, x) in sk.iter().enumerate() {
        if k % 2 == 0 {
            ensure(x.is_zero(), format!("even term k = {k} survives"))?;
        } else {
            expect(x.coeff(&parallel_edges(k)), rat(1, fact(k)), &format!("odd term k = {k}"))?;
        }
    }
    expect(sk[1].clone(), lie_to_gra(1), "linear term")?;
    Ok("even terms 0; odd terms 1/1!, 1/3!, 1/5!, 1/7!".into())
}

/// Every registered check, ordered by id.
pub fn registry() -> Vec<Check> {
    use Suite::*;
    let mut v = vec![
        Check { id: "complexes-01", suite: Complexes, name: "δ² = 0 on fcGC_1, fcGC_2 (v ≤ 5, e ≤ 8)", run: cx_fcgc_square },
        Check { id: "complexes-02", suite: Complexes, name: "δ² = 0 on the GC_1, GC_2 projections (v ≤ 5, e ≤ 8)", run: cx_gc_square },
        Check { id: "complexes-03", suite: Complexes, name: "δ² = 0 on Def(Lie_d → O_c(Lie_d)) (n ≤ 3, k ≤ 3)", run: cx_def_square },
        Check { id: "complexes-04", suite: Complexes, name: "F∘δ = δ∘F on Def slices (n ≤ 3, k ≤ 3)", run: cx_chain_map },
        Check { id: "complexes-05", suite: Complexes, name: "δ(w₃) = 0 and w₃ not exact in GC_2 (4,6)", run: cx_w3 },
        Check { id: "complexes-06", suite: Complexes, name: "δ(w₅ with 5/2) = 0", run: cx_w5 },
        Check { id: "complexes-07", suite: Complexes, name: "theta closed, degree 1, not exact in GC_1", run: cx_theta },
        Check { id: "complexes-08", suite: Complexes, name: "theta has a δ-closed Def preimage", run: cx_theta_def },
        Check { id: "complexes-09", suite: Complexes, name: "tetrahedron preimage has Def degree 0", run: cx_tetra_def },
        Check { id: "complexes-10", suite: Complexes, name: "directed triangle is closed in GC_1", run: cx_triangle },
        Check { id: "complexes-11", suite: Complexes, name: "H(Def(Lie_d → Lie_d)) is spanned by the bracket", run: cx_def_lie },
        Check { id: "gutt-01", suite: Gutt, name: "x∗y = x⊙y + (ħ/2)z on Heisenberg", run: gutt_first_order },
        Check { id: "gutt-02", suite: Gutt, name: "x∗y − y∗x = ħ[x,y] on every built-in algebra", run: gutt_commutator },
        Check { id: "gutt-03", suite: Gutt, name: "∗ is associative on ⊙-degree ≤ 3 monomials", run: gutt_associative },
        Check { id: "gutt-04", suite: Gutt, name: "σ⁻¹∘σ = id on degree ≤ 4", run: gutt_round_trip },
        Check { id: "gutt-05", suite: Gutt, name: "x∗y² = x⊙y² + ħ y⊙z on Heisenberg", run: gutt_x_yy },
        Check { id: "gutt-06", suite: Gutt, name: "skew-symmetrized mod-I series keeps 1/k! on odd k", run: gutt_series },
        Check { id: "operads-01", suite: Operads, name: "Gra composition example reproduces 4 terms", run: op_gra_example },
        Check { id: "operads-02", suite: Operads, name: "corolla ∘₂ corolla reproduces 3 terms", run: op_corolla_example },
        Check { id: "operads-03", suite: Operads, name: "doubly attached component example reproduces 3 terms", run: op_double_attachment_example },
        Check { id: "operads-04", suite: Operads, name: "Jacobi image under i is 0 (d = 1, 2)", run: op_jacobi },
        Check { id: "operads-05", suite: Operads, name: "Ass → O(Ass) associator residue is the 2-term difference", run: op_associator },
        Check { id: "operads-06", suite: Operads, name: "dim Lie(m) = (m−1)! for m ≤ 6", run: op_lie_dims },
        Check { id: "operads-07", suite: Operads, name: "BCH orders 1–3", run: op_bch },
        Check { id: "operads-08", suite: Operads, name: "bracket expressions round-trip", run: op_bracket_parser },
        Check { id: "operads-09", suite: Operads, name: "quotient O(Lie_d) → Gra_d on the corolla and its composite", run: op_quotient },
        Check { id: "operads-10", suite: Operads, name: "operad axioms in Gra_d on 200 random instances", run: op_gra_axioms },
        Check { id: "operads-11", suite: Operads, name: "operad axioms in O(Lie_d) on 200 random instances", run: op_olie_axioms },
        Check { id: "operads-12", suite: Operads, name: "canonical forms and signs under 500 random relabellings", run: op_relabelling },
    ];
    v.sort_by_key(|c| c.id);
    v
}

/// Checks of the named suites.
pub fn select(suites: &[Suite]) -> Vec<Check> {
    registry().into_iter().filter(|c| suites.contains(&c.suite)).collect()
}
