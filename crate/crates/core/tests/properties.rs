use std::collections::BTreeMap;

use ffk_core::algebra::AlgebraPresentation;
use ffk_core::battery::sequence_suite;
use ffk_core::ciproof::{ci_check, gl_transform_constant, substitution_coherence, unimodular_from_entries};
use ffk_core::current::{build_current_presentation, CurrentSpec};
use ffk_core::groebner::{Budget, Ideal};
use ffk_core::koszul::KoszulComplex;
use ffk_core::ncalg::{NcElement, NcPresentation, RewriteStrategy, Word};
use ffk_core::poly::{Monomial, MonomialOrder, Polynomial, Rational, VariableContext};
use ffk_core::yangian::{build_presentation, YangianSpec};
use proptest::prelude::*;

fn ctx3() -> VariableContext {
    VariableContext::standard(&["x", "y", "z"]).unwrap()
}

fn budget() -> Budget {
    Budget::default()
}

prop_compose! {
    fn term(nvars: usize, maxdeg: u32)(exps in prop::collection::vec(0..=maxdeg, nvars), c in -5i64..=5) -> (Vec<u32>, i64) {
        (exps, c)
    }
}

fn poly_in(ctx: VariableContext, maxdeg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(term(ctx.len(), maxdeg), 0..=max_terms).prop_map(move |ts| {
        Polynomial::from_terms(
            &ctx,
            ts.into_iter()
                .map(|(e, c)| (Monomial::from_exponents(e), Rational::from_integer(c.into()))),
        )
    })
}

/// A nonzero homogeneous polynomial of degree `d` in the given context.
fn homogeneous_in(ctx: VariableContext, max_d: u32) -> impl Strategy<Value = Polynomial> {
    (1..=max_d, prop::collection::vec((0usize..64, 1i64..=3), 1..=3)).prop_map(move |(d, picks)| {
        let monos = ffk_core::algebra::monomials_of_degree(ctx.weights(), d);
        let terms = picks
            .into_iter()
            .map(|(i, c)| (monos[i % monos.len()].clone(), Rational::from_integer(c.into())));
        Polynomial::from_terms(&ctx, terms)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly_in(ctx3(), 3, 4), b in poly_in(ctx3(), 3, 4), c in poly_in(ctx3(), 3, 4)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn substitution_is_a_homomorphism(a in poly_in(ctx3(), 2, 4), b in poly_in(ctx3(), 2, 4), s in poly_in(ctx3(), 2, 3)) {
        let map = BTreeMap::from([(0usize, s)]);
        let lhs = (&a * &b).substitute(&map).unwrap();
        let rhs = &a.substitute(&map).unwrap() * &b.substitute(&map).unwrap();
        prop_assert_eq!(lhs, rhs);
        let sum = (&a + &b).substitute(&map).unwrap();
        prop_assert_eq!(sum, &a.substitute(&map).unwrap() + &b.substitute(&map).unwrap());
    }

    #[test]
    fn normal_form_is_idempotent(g in prop::collection::vec(poly_in(ctx3(), 2, 3), 1..=2), p in poly_in(ctx3(), 3, 5)) {
        let ideal = Ideal::new(&ctx3(), g.clone()).unwrap();
        let r = ideal.normal_form(&p, budget()).unwrap();
        prop_assert_eq!(ideal.normal_form(&r, budget()).unwrap(), r.clone());
        // p - r lies in the ideal and each generator reduces to zero
        prop_assert!(ideal.contains(&(&p - &r), budget()).unwrap());
        for x in &g {
            prop_assert!(ideal.normal_form(x, budget()).unwrap().is_zero());
        }
    }

    #[test]
    fn dimension_does_not_depend_on_order(g in prop::collection::vec(poly_in(ctx3(), 2, 3), 1..=3)) {
        let ideal = Ideal::new(&ctx3(), g).unwrap();
        let dims: Vec<i64> = MonomialOrder::ALL
            .iter()
            .map(|&o| ideal.krull_dimension_with(o, budget()).unwrap().krull_dim)
            .collect();
        prop_assert!(dims.windows(2).all(|w| w[0] == w[1]), "{:?}", dims);
    }

    #[test]
    fn koszul_differential_squares_to_zero(g in prop::collection::vec(homogeneous_in(ctx3(), 2), 1..=3)) {
        let alg = AlgebraPresentation::polynomial_ring(&ctx3());
        let cx = KoszulComplex::new(&g, &alg, 5, budget()).unwrap();
        prop_assert!(cx.d_squared_is_zero().unwrap());
    }

    #[test]
    fn koszul_agrees_with_dimension_for_pairs(g in prop::collection::vec(homogeneous_in(ctx3(), 2), 2)) {
        // two forms fail to be regular exactly when they share a factor,
        // and the syzygy then sits below degree 2 + 2
        let alg = AlgebraPresentation::polynomial_ring(&ctx3());
        let ci = ci_check(&g, &alg, budget()).unwrap().is_ci();
        let table = KoszulComplex::new(&g, &alg, 5, budget()).unwrap().homology_table().unwrap();
        prop_assert_eq!(ci, table.higher_homology_vanishes() && table.h0_nonzero());
    }

    #[test]
    fn killing_variables_preserves_verdict(g in prop::collection::vec(homogeneous_in(ctx3(), 2), 1..=2), kill in 0usize..3) {
        let (big, small) = substitution_coherence(&g, &ctx3(), &[kill], budget()).unwrap();
        prop_assert_eq!(big.verdict, small.verdict);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn verdict_invariant_under_unimodular_transforms(idx in 0usize..24, upper in prop::collection::vec(-4i64..=4, 3), lower in prop::collection::vec(-4i64..=4, 3)) {
        let suite = sequence_suite();
        let s = &suite[idx % suite.len()];
        let (alg, seq) = s.build().unwrap();
        let l = unimodular_from_entries(seq.len(), &upper, &lower);
        let moved = gl_transform_constant(&seq, &l).unwrap();
        prop_assert_eq!(ci_check(&moved, &alg, budget()).unwrap().verdict, ci_check(&seq, &alg, budget()).unwrap().verdict);
    }

    #[test]
    fn subsequences_of_ci_are_ci(idx in 0usize..24, mask in 1u32..8) {
        let suite: Vec<_> = sequence_suite().into_iter().filter(|s| s.ci).collect();
        let s = &suite[idx % suite.len()];
        let (alg, seq) = s.build().unwrap();
        let sub: Vec<Polynomial> = seq.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, p)| p.clone()).collect();
        prop_assume!(!sub.is_empty());
        prop_assert!(ci_check(&sub, &alg, budget()).unwrap().is_ci());
    }
}

fn random_word(len: usize, max: u32) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..max, 0..=len)
}

fn presentations() -> Vec<NcPresentation> {
    vec![
        NcPresentation::sl2(),
        build_current_presentation(&CurrentSpec::new(2, 2).unwrap()).unwrap(),
        build_presentation(&YangianSpec::new(2, 2).unwrap(), budget()).unwrap(),
    ]
}

fn element(p: &NcPresentation, words: &[(Word, i64)]) -> NcElement {
    let n = p.len() as u32;
    let mut out = NcElement::zero();
    for (w, c) in words {
        let w: Word = w.iter().map(|x| x % n).collect();
        let nf = p.pbw_normal_form(&w, budget()).unwrap();
        out.add_scaled(&nf, &Rational::from_integer((*c).into()));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rewriting_is_confluent(which in 0usize..3, w in random_word(5, 64)) {
        let p = &presentations()[which];
        let w: Word = w.iter().map(|x| x % p.len() as u32).collect();
        let memo = p.pbw_normal_form(&w, budget()).unwrap();
        prop_assert_eq!(&p.naive_normal_form(&w, RewriteStrategy::Leftmost, budget()).unwrap(), &memo);
        prop_assert_eq!(&p.naive_normal_form(&w, RewriteStrategy::Rightmost, budget()).unwrap(), &memo);
    }

    #[test]
    fn jacobi_identity(which in 0usize..3, a in 0u32..64, b in 0u32..64, c in 0u32..64) {
        let p = &presentations()[which];
        let n = p.len() as u32;
        let (x, y, z) = (NcElement::letter(a % n), NcElement::letter(b % n), NcElement::letter(c % n));
        let br = |u: &NcElement, v: &NcElement| p.commutator(u, v, budget()).unwrap();
        let total = &(&br(&x, &br(&y, &z)) + &br(&y, &br(&z, &x))) + &br(&z, &br(&x, &y));
        prop_assert!(total.is_zero());
    }

    #[test]
    fn multiplication_is_associative(which in 0usize..3, a in prop::collection::vec((random_word(3, 64), -3i64..=3), 1..=2), b in prop::collection::vec((random_word(3, 64), -3i64..=3), 1..=2), c in prop::collection::vec((random_word(2, 64), -3i64..=3), 1..=2)) {
        let p = &presentations()[which];
        let (a, b, c) = (element(p, &a), element(p, &b), element(p, &c));
        let m = |u: &NcElement, v: &NcElement| p.mul(u, v, budget()).unwrap();
        prop_assert_eq!(m(&m(&a, &b), &c), m(&a, &m(&b, &c)));
    }

    #[test]
    fn graded_image_is_multiplicative(which in 0usize..3, a in prop::collection::vec((random_word(3, 64), 1i64..=3), 1..=2), b in prop::collection::vec((random_word(3, 64), 1i64..=3), 1..=2)) {
        let p = &presentations()[which];
        let (a, b) = (element(p, &a), element(p, &b));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let prod = p.mul(&a, &b, budget()).unwrap();
        let lhs = p.graded_image(&prod).unwrap();
        let rhs = &p.graded_image(&a).unwrap() * &p.graded_image(&b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn presentation_json_round_trips(which in 0usize..3, a in prop::collection::vec((random_word(3, 64), -3i64..=3), 1..=3)) {
        let p = &presentations()[which];
        let q = NcPresentation::from_json(&p.to_json()).unwrap();
        let a = element(p, &a);
        let j = p.element_to_json(&a);
        prop_assert_eq!(q.element_from_json(&j, budget()).unwrap(), a);
    }
}

proptest! {
    #[test]
    fn polynomial_json_round_trips(a in poly_in(ctx3(), 3, 5)) {
        let s = serde_json::to_string(&a).unwrap();
        let b: Polynomial = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn parse_display_round_trips(a in poly_in(ctx3(), 3, 5)) {
        let b = Polynomial::parse(&ctx3(), &a.to_string()).unwrap();
        prop_assert_eq!(a, b);
    }
}
