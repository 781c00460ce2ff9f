// SPDX-License-Identifier: MIT OR Apache-2.0
mod common;

use common::{tree_of, SpanOracle, Tree};
use num_traits::{One, Zero};
use polydiff_core::lie::*;
use polydiff_core::linalg::{rat, Rational};
use proptest::prelude::*;

fn w(s: &str) -> BracketWord {
    BracketWord::parse(s).unwrap()
}

fn lie(terms: &[(i64, &str)], d: i64) -> LieElement {
    let expr: Vec<_> = terms.iter().map(|(c, s)| (rat(*c, 1), w(s))).collect();
    normalize(&expr, d).unwrap()
}

#[test]
fn antisymmetry() {
    let x = lie(&[(1, "[2,1]")], 1);
    assert_eq!(x, LieElement::bracket(1).scale(&rat(-1, 1)));
}

#[test]
fn jacobi_relator_vanishes() {
    let x = lie(&[(1, "[1,[2,3]]"), (1, "[2,[3,1]]"), (1, "[3,[1,2]]")], 1);
    assert!(x.is_zero());
}

#[test]
fn inconsistent_leaves_are_rejected() {
    let expr = vec![(rat(1, 1), w("[1,2]")), (rat(1, 1), w("[1,[2,3]]"))];
    assert!(normalize(&expr, 1).is_err());
    assert!(normalize(&[(rat(1, 1), w("[1,3]"))], 1).is_err());
}

#[test]
fn four_leaf_expansion_agrees_with_span_oracle() {
    let oracle = SpanOracle::new(4);
    let x = lie(&[(1, "[[1,2],[3,4]]")], 1);
    let mut comb: Vec<(Tree, Rational)> = vec![(tree_of(&w("[[1,2],[3,4]]")), Rational::one())];
    for (c, b) in x.to_words() {
        comb.push((tree_of(&b), -c));
    }
    assert!(oracle.is_zero_mod_relations(&comb));
    assert_eq!(x.terms().len(), 2);
}

#[test]
fn dimensions_match_span_oracle() {
    let mut fact = 1;
    for m in 1..=6usize {
        if m > 1 {
            fact *= m - 1;
        }
        assert_eq!(dim_lie(m), fact, "normalized span, m = {m}");
        assert_eq!(SpanOracle::new(m).quotient_dim(), fact, "oracle, m = {m}");
        assert_eq!(basis_words(m).len(), fact);
    }
}

#[test]
fn graft_examples() {
    let br = LieElement::bracket(1);
    assert_eq!(br.graft(1, &LieElement::unit(1)).unwrap(), br);
    assert_eq!(br.graft(2, &br).unwrap(), lie(&[(1, "[1,[2,3]]")], 1));
    assert!(br.graft(3, &br).is_err());

    let outer = lie(&[(1, "[1,[2,3]]")], 1);
    let g = outer.graft(2, &br).unwrap();
    let oracle = SpanOracle::new(4);
    let mut comb = vec![(tree_of(&w("[1,[[2,3],4]]")), Rational::one())];
    for (c, b) in g.to_words() {
        comb.push((tree_of(&b), -c));
    }
    assert!(oracle.is_zero_mod_relations(&comb));
}

#[test]
fn parser_round_trip_and_errors() {
    for s in ["1", "[1,2]", "[[1,2],[3,[4,5]]]"] {
        assert_eq!(w(s).to_string(), s);
    }
    assert_eq!(w(" [ 1 ,\n [2, 3] ] ").to_string(), "[1,[2,3]]");
    match BracketWord::parse("[1,\n 2") {
        Err(polydiff_core::Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
        other => panic!("unexpected {other:?}"),
    }
    assert!(BracketWord::parse("[1,2]]").is_err());
    assert!(BracketWord::parse("[0,2]").is_err());
}

#[test]
fn bch_low_orders() {
    let b = bch_truncated(3).unwrap();
    let x = |s: &str| normalize_free(&[(rat(1, 1), w(s))]);
    assert_eq!(b[0].to_assoc(), add(&x("1"), &x("2")));
    assert_eq!(b[1].to_assoc(), scale(&x("[1,2]"), rat(1, 2)));
    let third = add(&x("[1,[1,2]]"), &x("[[1,2],2]"));
    assert_eq!(b[2].to_assoc(), scale(&third, rat(1, 12)));
    assert!(bch_truncated(7).is_err());
}

fn normalize_free(expr: &[(Rational, BracketWord)]) -> AssocPoly {
    let mut p = AssocPoly::new();
    for (c, b) in expr {
        for (u, x) in b.expand() {
            *p.entry(u).or_insert_with(Rational::zero) += c * x;
        }
    }
    p.retain(|_, x| !x.is_zero());
    p
}

fn add(a: &AssocPoly, b: &AssocPoly) -> AssocPoly {
    let mut p = a.clone();
    for (u, x) in b {
        *p.entry(u.clone()).or_insert_with(Rational::zero) += x;
    }
    p.retain(|_, x| !x.is_zero());
    p
}

fn scale(a: &AssocPoly, c: Rational) -> AssocPoly {
    a.iter().map(|(u, x)| (u.clone(), x * &c)).collect()
}

#[test]
fn bch_reversal_symmetry() {
    // BCH(X, Y) = -BCH(-Y, -X) degree by degree.
    for p in bch_truncated(6).unwrap() {
        let n = p.degree;
        let sign = if n % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
        let a = p.to_assoc();
        let swapped: AssocPoly = a
            .iter()
            .map(|(u, x)| (u.iter().map(|&l| 3 - l).collect::<Vec<u8>>(), -(x * &sign)))
            .collect();
        assert_eq!(swapped, a, "order {n}");
    }
}

fn arb_lie(m: usize) -> impl Strategy<Value = LieElement> {
    proptest::collection::vec(-2i64..3, basis_words(m).len()).prop_map(move |cs| {
        let mut x = LieElement::zero(m, 1);
        for (b, c) in basis_words(m).iter().zip(cs) {
            x = x.add(&LieElement::basis(b, 1).scale(&rat(c, 1)));
        }
        x
    })
}

fn arb_perm(n: usize) -> impl Strategy<Value = Vec<u8>> {
    Just((1..=n as u8).collect::<Vec<u8>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalize_is_idempotent(x in arb_lie(4)) {
        let again = normalize(&x.to_words(), 1).unwrap();
        prop_assert_eq!(again, x);
    }

    #[test]
    fn relabelled_jacobi_vanishes(p in (3usize..=6).prop_flat_map(arb_perm)) {
        let m = p.len();
        let leaf = |i: usize| BracketWord::leaf(p[i] as u32);
        // Jacobi on the first three relabelled leaves, bracketed with the rest.
        let mut terms = vec![];
        for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            let mut t = BracketWord::bracket(leaf(a), BracketWord::bracket(leaf(b), leaf(c)));
            for i in 3..m {
                t = BracketWord::bracket(t, leaf(i));
            }
            terms.push((rat(1, 1), t));
        }
        prop_assert!(normalize(&terms, 1).unwrap().is_zero());
    }

    #[test]
    fn graft_is_associative(a in arb_lie(3), b in arb_lie(3), c in arb_lie(2), i in 1usize..=3, j0 in 0usize..3) {
        // Slot j lies inside the grafted b.
        let j = i + j0;
        let lhs = a.graft(i, &b).unwrap().graft(j, &c).unwrap();
        let rhs = a.graft(i, &b.graft(j - i + 1, &c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn relabel_is_an_action(x in arb_lie(4), p in arb_perm(4), q in arb_perm(4)) {
        let pq: Vec<u8> = (0..4).map(|k| p[q[k] as usize - 1]).collect();
        prop_assert_eq!(x.relabel(&q).unwrap().relabel(&p).unwrap(), x.relabel(&pq).unwrap());
    }
}
