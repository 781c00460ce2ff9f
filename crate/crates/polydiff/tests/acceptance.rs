// SPDX-License-Identifier: MIT OR Apache-2.0
//! Acceptance criteria, one line each. Exits nonzero if any criterion fails.

#[path = "../../polydiff-core/tests/common/mod.rs"]
mod common;

use std::time::Instant;

use polydiff::checks::*;
use polydiff::props;
use polydiff_core::def::{
    build_slice, cohomology_rank, def_differential, gc_differential, gc_differential_el, gc_projected_differential,
    is_exact, Bidegree, Complex, DefLie, DefOc, GcElement, GraphComplex,
};
use polydiff_core::gutt::{gutt_mod_i_series, parallel_edges, skew_symmetrize_series, star, FPLieAlgebra, HPoly};
use polydiff_core::lie::{bch_truncated, dim_lie, BracketWord, LieElement};
use polydiff_core::linalg::{rat, Rational, SparseMatrix};

type Verdict = Result<String, String>;

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

/// Exactness by a dense rank comparison: `x` is a coboundary iff appending
/// it to the predecessor's image columns leaves the rank unchanged.
fn dense_exact<C: Complex>(c: &C, x: &C::Elem, b: Bidegree) -> bool {
    let p = build_slice(c, (b.0 - 1, b.1 - 1)).unwrap();
    let mut keys = p.target_keys.clone();
    let mut col = Vec::new();
    for (k, v) in c.coords(x) {
        let i = match keys.iter().position(|q| *q == k) {
            Some(i) => i,
            None => {
                keys.push(k);
                keys.len() - 1
            }
        };
        col.push((i, v));
    }
    col.sort_by_key(|e| e.0);
    let mut cols = p.differential.columns();
    let before = common::dense_rank(&SparseMatrix::from_columns(keys.len(), &cols).unwrap());
    cols.push(col);
    let after = common::dense_rank(&SparseMatrix::from_columns(keys.len(), &cols).unwrap());
    before == after
}

fn c1_worked_examples() -> Verdict {
    let mut parts = Vec::new();
    for d in [1, 2] {
        let (got, want) = gra_example(d);
        ensure(got == want && got.len() == 4, format!("Gra example at d = {d}: {got:?}"))?;
    }
    parts.push("Gra composition 4/4 terms".to_string());
    let (got, want) = example_corolla(1);
    ensure(got == want && got.n_pictures() == 3, format!("corolla example: {got:?}"))?;
    parts.push("corolla ∘₂ corolla 3/3 pictures".to_string());
    let (got, want) = example_double_attachment();
    ensure(got == want && got.n_pictures() == 3, format!("double attachment example: {got:?}"))?;
    parts.push("double attachment 3/3 pictures".to_string());
    Ok(parts.join(", "))
}

fn c2_morphisms() -> Verdict {
    for d in [1, 2] {
        ensure(gra_jacobi(d).is_zero(), format!("Jacobi image in Gra_{d} is nonzero"))?;
        ensure(olie_jacobi(d).is_zero(), format!("Jacobi image in O(Lie_{d}) is nonzero"))?;
    }
    let (got, want) = associator_residue();
    ensure(got == want && got.len() == 2, format!("associator residue {got:?}"))?;
    Ok("Jacobi image 0 in Gra_d and O(Lie_d) for d = 1, 2; associator residue is the 2-term difference".into())
}

fn c3_square_zero() -> Verdict {
    let mut parts = Vec::new();
    for d in [1, 2] {
        let n = gc_square_zero(d, false, 5, 8)?;
        let m = gc_square_zero(d, true, 5, 8)?;
        parts.push(format!("fcGC_{d} {n} gens, GC_{d} {m} gens"));
    }
    // Matrix form on every fcGC_1 slice pair: D_{b+1} D_b = 0.
    let c = GraphComplex::fcgc(1);
    for v in 2..=4 {
        for e in v - 1..=7 {
            let s = build_slice(&c, (v, e)).map_err(|e| e.to_string())?;
            for (j, x) in s.basis.iter().enumerate() {
                let y = c.differential(x);
                ensure(c.differential(&y).is_zero(), format!("matrix product column {j} at ({v},{e})"))?;
            }
        }
    }
    let k = def_checks(false)?;
    parts.push(format!("Def {k} gens (n ≤ 3, k ≤ 3, d = 1, 2)"));
    Ok(parts.join(", "))
}

fn c4_chain_map() -> Verdict {
    let k = def_checks(true)?;
    Ok(format!("F∘δ = δ∘F on {k} Def generators (n ≤ 3, k ≤ 3, d = 1, 2)"))
}

fn c5_cocycles() -> Verdict {
    let gc2 = GraphComplex::gc(2);
    let w3 = GcElement::from_graph(&tetrahedron());
    ensure(gc_differential(&tetrahedron()).is_zero(), "δ(w₃) ≠ 0")?;
    ensure(!is_exact(&gc2, &w3, (4, 6)).map_err(|e| e.to_string())?, "w₃ exact")?;
    ensure(!dense_exact(&gc2, &w3, (4, 6)), "w₃ exact by the dense oracle")?;
    let (wheel, _) = w5_parts();
    ensure(!gc_differential(&wheel).is_zero(), "bare 5-wheel closed")?;
    ensure(gc_differential_el(&w5()).is_zero() && gc_projected_differential(&w5()).is_zero(), "δ(w₅ + 5/2 c) ≠ 0")?;
    let gc1 = GraphComplex::gc(1);
    let th = GcElement::from_graph(&theta());
    ensure(gc1.differential(&th).is_zero(), "δθ ≠ 0")?;
    ensure(gc1.degree((2, 3)) == 1, "deg θ ≠ 1")?;
    ensure(!is_exact(&gc1, &th, (2, 3)).map_err(|e| e.to_string())?, "θ exact")?;
    ensure(!dense_exact(&GraphComplex::fcgc(1), &th, (2, 3)), "θ exact in fcGC_1 by the dense oracle")?;
    let c = DefOc::new(1);
    let x = c.theta();
    let lift = c.closed_lift(&x, (2, 3)).map_err(|e| e.to_string())?.ok_or("theta has no closed Def preimage")?;
    ensure(def_differential(&c, &lift).is_zero(), "Def preimage not closed")?;
    ensure(c.map_f(&lift) == th, "F(preimage) ≠ θ")?;
    let bare_closed = def_differential(&c, &x).is_zero();
    Ok(format!(
        "w₃ closed, not exact; w₅ closed with 5/2; θ closed, degree 1, not exact; closed Def preimage of θ ({} terms; bare element closed: {bare_closed})",
        lift.len()
    ))
}

fn c6_def_lie() -> Verdict {
    let mut parts = Vec::new();
    for d in [1, 2] {
        let c = DefLie::new(d);
        let mut total = 0;
        for n in 2..=5 {
            let r = cohomology_rank(&c, (n, n - 1)).map_err(|e| e.to_string())?;
            let s = build_slice(&c, (n, n - 1)).map_err(|e| e.to_string())?;
            ensure(r.kernel == r.dim - common::dense_rank(&s.differential), "kernel differs from the dense oracle")?;
            total += r.cohomology;
        }
        ensure(total == 1, format!("total cohomology {total} for d = {d}"))?;
        let b = c.bracket_class();
        ensure(b == LieElement::bracket(d) && def_differential(&c, &b).is_zero(), "bracket class")?;
        ensure(!is_exact(&c, &b, (2, 1)).map_err(|e| e.to_string())?, "bracket exact")?;
        parts.push(format!("d={d}: {total}"));
    }
    Ok(format!("total dim over arity 2..5: {}, witness the bracket", parts.join(", ")))
}

fn c7_lie_engine() -> Verdict {
    let mut dims = Vec::new();
    let mut fact = 1;
    for m in 1..=6usize {
        if m > 1 {
            fact *= m - 1;
        }
        let oracle = common::SpanOracle::new(m).quotient_dim();
        ensure(dim_lie(m) == fact && oracle == fact, format!("dim Lie({m}) = {} vs oracle {oracle}", dim_lie(m)))?;
        dims.push(fact.to_string());
    }
    let b = bch_truncated(3).map_err(|e| e.to_string())?;
    let free = |expr: &[(Rational, &str)]| {
        let mut p = polydiff_core::lie::AssocPoly::new();
        for (c, s) in expr {
            for (u, x) in BracketWord::parse(s).unwrap().expand() {
                *p.entry(u).or_insert_with(|| rat(0, 1)) += c * x;
            }
        }
        p.retain(|_, x| *x != rat(0, 1));
        p
    };
    ensure(b[0].to_assoc() == free(&[(rat(1, 1), "1"), (rat(1, 1), "2")]), "BCH order 1")?;
    ensure(b[1].to_assoc() == free(&[(rat(1, 2), "[1,2]")]), "BCH order 2")?;
    ensure(b[2].to_assoc() == free(&[(rat(1, 12), "[1,[1,2]]"), (rat(-1, 12), "[2,[1,2]]")]), "BCH order 3")?;
    Ok(format!("dim Lie(1..6) = {} (span oracle agrees); BCH coefficients 1, 1/2, 1/12", dims.join(", ")))
}

fn c8_gutt() -> Verdict {
    let h = FPLieAlgebra::heisenberg();
    let mut want = HPoly::monomial(&[1, 2]);
    want.add_term(vec![3], 1, rat(1, 2));
    ensure(star(&h, &HPoly::monomial(&[1]), &HPoly::monomial(&[2])) == want, "x∗y on Heisenberg")?;
    let ms = monomials(3, 3);
    let mut triples = 0;
    for a in &ms {
        for b in &ms {
            let ab = star(&h, &HPoly::monomial(a), &HPoly::monomial(b));
            for c in &ms {
                let l = star(&h, &ab, &HPoly::monomial(c));
                let r = star(&h, &HPoly::monomial(a), &star(&h, &HPoly::monomial(b), &HPoly::monomial(c)));
                ensure(l == r, format!("associativity at {a:?} {b:?} {c:?}"))?;
                triples += 1;
            }
        }
    }
    let s = skew_symmetrize_series(&gutt_mod_i_series(8).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    for (k, x) in s.iter().enumerate() {
        if k % 2 == 0 {
            ensure(x.is_zero(), format!("even term k = {k} survives"))?;
        }
    }
    for (k, f) in [(1, 1), (3, 6), (5, 120)] {
        ensure(s[k].coeff(&parallel_edges(k)) == rat(1, f), format!("coefficient of k = {k}"))?;
        ensure(s[k].len() == 1, format!("extra graphs at k = {k}"))?;
    }
    Ok(format!("x∗y = x⊙y + (ħ/2)z; associative on {triples} Heisenberg triples; series 0 on even k, 1/1!, 1/3!, 1/5! on odd k"))
}

fn c9_properties() -> Verdict {
    let g = props::gra_axioms(SEED_GRA, AXIOM_CASES)?;
    let o = props::olie_axioms(SEED_OLIE, AXIOM_CASES)?;
    let r = props::relabelling(SEED_RELABEL, RELABEL_CASES)?;
    ensure(g >= 200 && o >= 200 && r >= 500, "too few instances")?;
    Ok(format!("Gra_d axioms {g} instances, O(Lie_d) axioms {o} instances, relabellings {r}; 0 failures"))
}

fn main() {
    let criteria: [(&str, &str, fn() -> Verdict); 9] = [
        ("1", "worked-example fidelity [exact equality]", c1_worked_examples),
        ("2", "morphism checks [exact]", c2_morphisms),
        ("3", "differential soundness δ² = 0 [exact]", c3_square_zero),
        ("4", "chain map F∘δ = δ∘F [exact]", c4_chain_map),
        ("5", "cocycle witnesses [exact]", c5_cocycles),
        ("6", "Def(Lie_d → Lie_d) cohomology [exact]", c6_def_lie),
        ("7", "Lie engine [exact]", c7_lie_engine),
        ("8", "Gutt star product [exact]", c8_gutt),
        ("9", "property suites [zero failures]", c9_properties),
    ];
    let mut failed = 0;
    for (n, name, f) in criteria {
        let start = Instant::now();
        let verdict = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("criterion {n} PASS {name} ({secs:.1}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n} FAIL {name} ({secs:.1}s): {detail}");
            }
        }
    }
    println!("acceptance: {} of 9 criteria pass", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
