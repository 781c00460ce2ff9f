// SPDX-License-Identifier: MIT OR Apache-2.0
use num_traits::One;
use polydiff_core::gra::{lie_to_gra, GraElement};
use polydiff_core::graph::OrientedGraph;
use polydiff_core::lie::{basis_words, LieElement};
use polydiff_core::linalg::{int, rat, Rational};
use polydiff_core::poly::*;
use proptest::prelude::*;

mod common;

/// Element from `(coeff, [(payload, attachments)])`.
fn el<P: ComponentOperad>(o: &PolyOperad<P>, n: usize, terms: &[(i64, &[(&str, &[u8])])]) -> OElement {
    let raw: Vec<(Rational, Vec<RawComponent>)> = terms
        .iter()
        .map(|(c, comps)| (int(*c), comps.iter().map(|(w, a)| o.parse_component(w, a).unwrap()).collect()))
        .collect();
    o.element(n, &raw).unwrap()
}

#[test]
fn corolla_composed_with_corolla() {
    for d in [1, 2, 3, 4] {
        let o = OLie::lie(d);
        let c = o.corolla();
        let got = o.compose(&c, 2, &c).unwrap();
        let want = el(
            &o,
            3,
            &[
                (1, &[("[1,[2,3]]", &[1, 2, 3])]),
                (1, &[("[1,2]", &[1, 2]), ("[1,2]", &[2, 3])]),
                (1, &[("[1,2]", &[1, 3]), ("[1,2]", &[2, 3])]),
            ],
        );
        assert_eq!(got, want, "d = {d}");
        assert_eq!(got.n_pictures(), 3);
    }
}

#[test]
fn composition_with_a_doubly_attached_component() {
    let o = OLie::lie(2);
    // Components are listed in orientation order; at d = 2 both are odd.
    let a = el(&o, 3, &[(1, &[("[1,2]", &[3, 3]), ("[1,2]", &[1, 2])])]);
    assert_eq!(a.len(), 1);
    let got = o.compose(&a, 1, &o.corolla()).unwrap();
    let want = el(
        &o,
        4,
        &[
            (1, &[("[1,2]", &[4, 4]), ("[[1,2],3]", &[1, 2, 3])]),
            (1, &[("[1,2]", &[4, 4]), ("[1,2]", &[1, 3]), ("[1,2]", &[1, 2])]),
            (1, &[("[1,2]", &[4, 4]), ("[1,2]", &[2, 3]), ("[1,2]", &[1, 2])]),
        ],
    );
    assert_eq!(got, want);
    assert_eq!(got.n_pictures(), 3);
    // For odd d a bracket with both slots on one vertex vanishes.
    let o1 = OLie::lie(1);
    assert!(el(&o1, 1, &[(1, &[("[1,2]", &[1, 1])])]).is_zero());
}

#[test]
fn unit_and_bounds() {
    let o = OLie::lie(1);
    let c = o.corolla();
    let u = OElement::unit(1);
    assert_eq!(o.compose(&c, 1, &u).unwrap(), c);
    assert_eq!(o.compose(&u, 1, &c).unwrap(), c);
    assert!(o.compose(&c, 3, &c).is_err());
    assert!(o.compose(&c, 0, &c).is_err());
    assert_eq!(o.map_i(&LieElement::unit(1)), u);
}

#[test]
fn odd_components_anticommute() {
    // At d = 2 a two-slot component has degree -1.
    let o = OLie::lie(2);
    let x = el(&o, 3, &[(1, &[("[1,2]", &[1, 2]), ("[1,2]", &[2, 3])])]);
    let y = el(&o, 3, &[(1, &[("[1,2]", &[2, 3]), ("[1,2]", &[1, 2])])]);
    assert_eq!(x, y.scale(&rat(-1, 1)));
    assert!(el(&o, 2, &[(1, &[("[1,2]", &[1, 2]), ("[1,2]", &[1, 2])])]).is_zero());
    // At d = 1 every component is even.
    let o = OLie::lie(1);
    let x = el(&o, 3, &[(1, &[("[1,2]", &[1, 2]), ("[1,2]", &[2, 3])])]);
    let y = el(&o, 3, &[(1, &[("[1,2]", &[2, 3]), ("[1,2]", &[1, 2])])]);
    assert_eq!(x, y);
    assert_eq!(el(&o, 2, &[(1, &[("[1,2]", &[1, 2]), ("[1,2]", &[1, 2])])]).len(), 1);
}

#[test]
fn coinvariants_on_a_shared_vertex() {
    // [[1,2],3] with slots 2 and 3 on one vertex equals -[[1,3],2] there for odd d.
    let o = OLie::lie(1);
    let x = el(&o, 2, &[(1, &[("[[1,2],3]", &[1, 2, 2])]), (1, &[("[[1,3],2]", &[1, 2, 2])])]);
    assert_eq!(x.len(), 1);
    // All three slots on one vertex: Lie(3) has no symmetric part.
    assert!(el(&o, 1, &[(1, &[("[[1,2],3]", &[1, 1, 1])])]).is_zero());
    // For even d the twist makes the fully attached component the alternating part, also zero.
    let o = OLie::lie(2);
    assert!(el(&o, 1, &[(1, &[("[[1,2],3]", &[1, 1, 1])])]).is_zero());
    assert_eq!(el(&o, 1, &[(1, &[("[1,2]", &[1, 1])])]).len(), 1);
}

fn jacobi_image(o: &OLie) -> OElement {
    let c = o.corolla();
    let t = o.compose(&c, 2, &c).unwrap();
    t.add(&o.s_action(&t, &[2, 3, 1]).unwrap()).add(&o.s_action(&t, &[3, 1, 2]).unwrap())
}

#[test]
fn jacobi_maps_to_zero() {
    for d in [1, 2, 3, 4] {
        let o = OLie::lie(d);
        assert!(jacobi_image(&o).is_zero(), "d = {d}");
    }
}

#[test]
fn associator_residue_for_ass() {
    let o = OAss::ass();
    let got = o.ass_remark_check();
    let want = el(
        &o,
        3,
        &[(1, &[("1 2", &[1, 2]), ("1 2", &[1, 3])]), (-1, &[("1 2", &[1, 3]), ("1 2", &[2, 3])])],
    );
    assert!(!got.is_zero());
    assert_eq!(got, want);
    assert_eq!(got.len(), 2);
    let coeffs: Vec<Rational> = got.terms().values().cloned().collect();
    assert!(coeffs.contains(&rat(1, 1)) && coeffs.contains(&rat(-1, 1)));
}

#[test]
fn quotient_examples() {
    for d in [1, 2] {
        let o = OLie::lie(d);
        let c = o.corolla();
        assert_eq!(quotient_to_gra(&c), lie_to_gra(d));
        let three = o.single_component(&LieElement::basis(&[1, 2, 3], d));
        assert!(quotient_to_gra(&three).is_zero());
        let lhs = quotient_to_gra(&o.compose(&c, 2, &c).unwrap());
        let rhs = lie_to_gra(d).compose(2, &lie_to_gra(d)).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.len(), 2);
    }
}

#[test]
fn connectivity_of_terms() {
    let o = OLie::lie(1);
    let x = el(&o, 3, &[(1, &[("[1,2]", &[1, 2])]), (1, &[("[1,2]", &[1, 2]), ("[1,2]", &[2, 3])])]);
    assert_eq!(x.connected_part().len(), 1);
    assert_eq!(OElement::unit(1).connected_part().len(), 1);
}

// Operad composition in Lie_d on elements, with the twist signs.
fn lie_compose(d: i64, x: &LieElement, i: usize, y: &LieElement) -> LieElement {
    let p = LieD { d };
    let mut out = LieElement::zero(x.arity() + y.arity() - 1, d);
    for (wx, cx) in x.terms() {
        for (wy, cy) in y.terms() {
            for (w, c) in p.graft(wx, i, wy) {
                out = out.add(&LieElement::basis(&w, d).scale(&(c * cx * cy)));
            }
        }
    }
    out
}

fn arb_lie(d: i64, m: usize) -> impl Strategy<Value = LieElement> {
    let words = basis_words(m);
    proptest::collection::vec(-2i64..3, words.len()).prop_map(move |cs| {
        let mut x = LieElement::zero(m, d);
        for (w, c) in words.iter().zip(cs) {
            x = x.add(&LieElement::basis(w, d).scale(&int(c)));
        }
        x
    })
}

/// Random single-term element with components of arity 2 or 3; `n` whites.
fn arb_term(d: i64, n: usize) -> impl Strategy<Value = OElement> {
    arb_term_with(d, n, 2)
}

fn arb_term_with(d: i64, n: usize, max_comps: usize) -> impl Strategy<Value = OElement> {
    let comp = (2usize..=3).prop_flat_map(move |m| {
        let words = basis_words(m);
        (0..words.len(), proptest::collection::vec(1..=n as u8, m)).prop_map(move |(k, a)| (words[k].clone(), a))
    });
    (proptest::collection::vec(comp, 0..=max_comps), -2i64..3).prop_map(move |(comps, c)| {
        let o = OLie::lie(d);
        let raw: Vec<RawComponent> = comps.iter().map(|(w, a)| o.raw(w, a)).collect();
        o.element(n, &[(int(c), raw)]).unwrap()
    })
}

/// Sum of two random terms.
fn arb_el(d: i64, n: usize) -> impl Strategy<Value = OElement> {
    (arb_term(d, n), arb_term(d, n)).prop_map(|(a, b)| a.add(&b))
}

fn arb_perm(n: usize) -> impl Strategy<Value = Vec<u8>> {
    Just((1..=n as u8).collect::<Vec<u8>>()).prop_shuffle()
}

/// Total degree of the first term, for a single-term element.
fn term_degree(d: i64, x: &OElement) -> i64 {
    x.terms().keys().next().map_or(0, |t| t.iter().map(|c| (c.arity() as i64 - 1) * (1 - d)).sum())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn unit_axioms((d, x) in (1i64..=2).prop_flat_map(|d| (Just(d), (1usize..=3).prop_flat_map(move |n| arb_el(d, n))))) {
        let o = OLie::lie(d);
        let u = OElement::unit(d);
        for i in 1..=x.arity() {
            prop_assert_eq!(o.compose(&x, i, &u).unwrap(), x.clone());
        }
        prop_assert_eq!(o.compose(&u, 1, &x).unwrap(), x);
    }

    #[test]
    fn sequential_associativity(
        (d, a, b, c, i, j0) in (1i64..=2).prop_flat_map(|d| (Just(d), arb_el(d, 2), arb_term(d, 2), arb_term_with(d, 2, 1), 1usize..=2, 0usize..2))
    ) {
        let o = OLie::lie(d);
        let j = i + j0;
        let lhs = o.compose(&o.compose(&a, i, &b).unwrap(), j, &c).unwrap();
        let rhs = o.compose(&a, i, &o.compose(&b, j - i + 1, &c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn parallel_associativity(
        (d, a, b, c) in (1i64..=2).prop_flat_map(|d| (Just(d), arb_el(d, 3), arb_term(d, 2), arb_term(d, 2)))
    ) {
        // (a ∘_1 b) ∘_{3+|b|-1} c = (-1)^{|b||c|} (a ∘_3 c) ∘_1 b
        let o = OLie::lie(d);
        let lhs = o.compose(&o.compose(&a, 1, &b).unwrap(), 3 + b.arity() - 1, &c).unwrap();
        let rhs = o.compose(&o.compose(&a, 3, &c).unwrap(), 1, &b).unwrap();
        let sign = if (term_degree(d, &b) * term_degree(d, &c)).rem_euclid(2) == 1 { rat(-1, 1) } else { rat(1, 1) };
        prop_assert_eq!(lhs, rhs.scale(&sign));
    }

    #[test]
    fn equivariance(
        (d, a, b, p, q, i) in (1i64..=2).prop_flat_map(|d| (Just(d), arb_el(d, 3), arb_el(d, 2), arb_perm(3), arb_perm(2), 1usize..=3))
    ) {
        let o = OLie::lie(d);
        let n2 = b.arity();
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
        let lhs = o.compose(&o.s_action(&a, &p).unwrap(), pi, &b).unwrap();
        prop_assert_eq!(lhs, o.s_action(&o.compose(&a, i, &b).unwrap(), &outer).unwrap());
        let mut inner: Vec<u8> = (1..=(3 + n2 - 1) as u8).collect();
        for w in 1..=n2 {
            inner[i + w - 2] = (i + q[w - 1] as usize - 1) as u8;
        }
        let lhs = o.compose(&a, i, &o.s_action(&b, &q).unwrap()).unwrap();
        prop_assert_eq!(lhs, o.s_action(&o.compose(&a, i, &b).unwrap(), &inner).unwrap());
    }

    #[test]
    fn map_i_is_a_morphism(
        (d, mx, my, i0) in (1i64..=2, 2usize..=3, 2usize..=3, 0usize..3)
            .prop_flat_map(|(d, mx, my, i0)| (Just(d), arb_lie(d, mx), arb_lie(d, my), Just(i0)))
    ) {
        let o = OLie::lie(d);
        let i = i0 % mx.arity() + 1;
        let lhs = o.map_i(&lie_compose(d, &mx, i, &my));
        let rhs = o.compose(&o.map_i(&mx), i, &o.map_i(&my)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quotient_is_a_morphism(
        (d, a, b, i) in (1i64..=2).prop_flat_map(|d| (Just(d), arb_el(d, 3), arb_el(d, 2), 1usize..=3))
    ) {
        // Tadpoles have no counterpart in Gra_d, so the operands avoid them.
        let o = OLie::lie(d);
        let (a, b) = (a.tadpole_free_part(), b.tadpole_free_part());
        let lhs = quotient_to_gra(&o.compose(&a, i, &b).unwrap());
        let rhs = quotient_to_gra(&a).compose(i, &quotient_to_gra(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn connected_operands_compose_to_connected(
        (d, a, b, i) in (1i64..=2).prop_flat_map(|d| (Just(d), arb_el(d, 3), arb_el(d, 2), 1usize..=3))
    ) {
        let o = OLie::lie(d);
        let (a, b) = (a.connected_part(), b.connected_part());
        let x = o.compose(&a, i, &b).unwrap();
        prop_assert_eq!(x.connected_part(), x);
    }
}

#[test]
fn text_form_round_trip() {
    for d in [1, 2] {
        let p = LieD { d };
        for m in 2..=5 {
            for w in basis_words(m) {
                let got = p.parse_word(&p.word_to_string(&w), m).unwrap();
                assert_eq!(got, vec![(w.clone(), int(p.text_sign(&w)))]);
            }
        }
    }
}

#[test]
fn text_form_of_composites() {
    // For even d a bracket expression is the composite of corollas.
    let o = OLie::lie(2);
    let c = o.corolla();
    let nested = o.compose(&c, 2, &c).unwrap();
    let single = el(&o, 3, &[(1, &[("[1,[2,3]]", &[1, 2, 3])])]);
    let mut top = OElement::zero(3, 2);
    for (t, x) in nested.terms() {
        if t.len() == 1 {
            top.add_canonical(t.clone(), x.clone());
        }
    }
    assert_eq!(top, single);
}

/// Coinvariant dimension from the dense rank of the swap relations.
fn oracle_quotient_dim<P: ComponentOperad>(p: &P, blocks: &[usize]) -> usize {
    use polydiff_core::linalg::SparseMatrix;
    let m: usize = blocks.iter().sum();
    let basis = p.basis(m);
    let index = |w: &Vec<u8>| basis.iter().position(|b| b == w).unwrap();
    let mut rows = Vec::new();
    let mut start = 0;
    for &b in blocks {
        for k in start..start + b - 1 {
            let mut perm: Vec<u8> = (1..=m as u8).collect();
            perm.swap(k, k + 1);
            for (i, w) in basis.iter().enumerate() {
                let mut v: Vec<(usize, Rational)> = p.act(w, &perm).into_iter().map(|(u, c)| (index(&u), c)).collect();
                v.push((i, rat(-1, 1)));
                rows.push(polydiff_core::linalg::normalize_sparse(v));
            }
        }
        start += b;
    }
    basis.len() - common::dense_rank(&SparseMatrix::from_rows(basis.len(), rows).unwrap())
}

fn check_coinvariants<P: ComponentOperad>(o: &PolyOperad<P>, blocks: &[usize]) {
    let p = o.component_operad();
    let m: usize = blocks.iter().sum();
    let attach: Vec<u8> = blocks.iter().enumerate().flat_map(|(k, &b)| std::iter::repeat(k as u8 + 1).take(b)).collect();
    let n = blocks.len();
    // Images of all basis words span the quotient.
    let mut keys = std::collections::BTreeSet::new();
    let mut images = Vec::new();
    for w in p.basis(m) {
        let x = o.element(n, &[(rat(1, 1), vec![o.raw(&w, &attach)])]).unwrap();
        keys.extend(x.terms().keys().cloned());
        images.push(x);
    }
    let keys: Vec<_> = keys.into_iter().collect();
    let rows: Vec<Vec<(usize, Rational)>> = images
        .iter()
        .map(|x| x.terms().iter().map(|(t, c)| (keys.iter().position(|k| k == t).unwrap(), c.clone())).collect())
        .collect();
    let rank = common::dense_rank(&polydiff_core::linalg::SparseMatrix::from_rows(keys.len(), rows).unwrap());
    assert_eq!(rank, keys.len(), "basis images must span exactly the quotient basis, {blocks:?}");
    assert_eq!(rank, oracle_quotient_dim(p, blocks), "blocks {blocks:?}");
    // Swap relations vanish.
    for (k, _) in attach.windows(2).enumerate().filter(|(_, a)| a[0] == a[1]) {
        let mut perm: Vec<u8> = (1..=m as u8).collect();
        perm.swap(k, k + 1);
        for w in p.basis(m) {
            let moved = RawComponent { attach: attach.clone(), word: p.act(&w, &perm) };
            let x = o.element(n, &[(rat(1, 1), vec![moved]), (rat(-1, 1), vec![o.raw(&w, &attach)])]).unwrap();
            assert!(x.is_zero(), "{w:?} {blocks:?}");
        }
    }
}

#[test]
fn coinvariants_match_relation_span() {
    let patterns: [&[usize]; 9] = [&[2], &[1, 1], &[3], &[2, 1], &[1, 2], &[4], &[2, 2], &[3, 1], &[1, 2, 1]];
    for d in [1, 2] {
        let o = OLie::lie(d);
        for b in patterns {
            check_coinvariants(&o, b);
        }
        check_coinvariants(&o, &[2, 3]);
    }
    let o = OAss::ass();
    for b in patterns {
        check_coinvariants(&o, b);
    }
}

#[test]
fn gra_morphism_keeps_edges_for_gra_target() {
    // A pair of two-slot components maps to the two-edge graph.
    let o = OLie::lie(1);
    let x = el(&o, 3, &[(1, &[("[1,2]", &[1, 2]), ("[1,2]", &[2, 3])])]);
    let g = GraElement::from_graph(&OrientedGraph::new(1, 3, vec![(1, 2), (2, 3)]).unwrap(), Rational::one());
    assert_eq!(quotient_to_gra(&x), g);
}
