//! Randomized algebraic invariants. These pin the small facts the rest of
//! the pipeline silently relies on, notably the box-truncation property of
//! colon quotients, which justifies every box-bounded enumeration.

use proptest::prelude::*;

use edge_ideals::complex::SimplicialComplex;
use edge_ideals::graph::WeightedOrientedGraph;
use edge_ideals::ideal::{minimalize, Monomial, MonomialIdeal};
use edge_ideals::vset::VertexSet;

fn arb_monomial(n: usize, max_exp: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_exp, n).prop_map(Monomial::new)
}

fn arb_gens(n: usize, max_gens: usize, max_exp: u32) -> impl Strategy<Value = Vec<Monomial>> {
    prop::collection::vec(arb_monomial(n, max_exp), 1..=max_gens)
}

/// A nonzero proper monomial ideal: at least one generator, none equal to 1.
fn arb_ideal(n: usize, max_gens: usize, max_exp: u32) -> impl Strategy<Value = MonomialIdeal> {
    arb_gens(n, max_gens, max_exp)
        .prop_filter("nonzero proper", |gens| gens.iter().all(|g| !g.is_unit()))
        .prop_map(move |gens| MonomialIdeal::new(n, gens))
}

fn arb_graph() -> impl Strategy<Value = WeightedOrientedGraph> {
    (1usize..=6)
        .prop_flat_map(|n| {
            let slots: Vec<(usize, usize)> = (1..=n)
                .flat_map(|i| ((i + 1)..=n).map(move |j| (i, j)))
                .collect();
            let m = slots.len();
            (
                Just(n),
                Just(slots),
                prop::collection::vec(0u8..3, m),
                prop::collection::vec(1u32..=3, n),
            )
        })
        .prop_map(|(n, slots, picks, weights)| {
            let edges: Vec<(usize, usize)> = slots
                .iter()
                .zip(&picks)
                .filter_map(|(&(u, v), &p)| match p {
                    0 => None,
                    1 => Some((u, v)),
                    _ => Some((v, u)),
                })
                .collect();
            WeightedOrientedGraph::new(n, edges, weights).unwrap().graph
        })
}

proptest! {
    #[test]
    fn minimalize_is_idempotent_and_divisor_free(gens in arb_gens(4, 8, 3)) {
        let min = minimalize(gens.clone());
        prop_assert_eq!(minimalize(min.clone()), min.clone());
        for (i, g) in min.iter().enumerate() {
            for (j, h) in min.iter().enumerate() {
                if i != j {
                    prop_assert!(!g.divides(h), "{g} divides {h} in a minimal set");
                }
            }
        }
        // same ideal: every input generator is a multiple of a kept one
        let ideal = MonomialIdeal::new(4, min);
        for g in &gens {
            prop_assert!(ideal.member(g));
        }
    }

    #[test]
    fn graph_json_round_trip(d in arb_graph()) {
        let parsed = WeightedOrientedGraph::parse(&d.to_json()).unwrap();
        prop_assert_eq!(parsed.graph, d);
        prop_assert!(parsed.notices.is_empty(), "round-trip should not renormalize");
    }

    #[test]
    fn ideal_json_round_trip(i in arb_ideal(4, 6, 3)) {
        prop_assert_eq!(MonomialIdeal::parse(&i.to_json()).unwrap(), i);
    }

    #[test]
    fn complex_json_round_trip(masks in prop::collection::vec(0u32..32, 0..6)) {
        let faces: Vec<VertexSet> = masks.into_iter().map(VertexSet::from_mask).collect();
        let delta = SimplicialComplex::from_faces(5, faces).unwrap();
        prop_assert_eq!(SimplicialComplex::parse(&delta.to_json()).unwrap(), delta);
    }

    #[test]
    fn radical_of_power_is_radical(i in arb_ideal(4, 5, 3), t in 1usize..=3) {
        prop_assert_eq!(i.power(t).radical(), i.radical());
    }

    /// The truncation fact behind every box enumeration: a colon quotient
    /// only sees exponents up to the generator maxima.
    #[test]
    fn colon_depends_only_on_truncated_exponents(
        i in arb_ideal(4, 5, 3),
        raw in prop::collection::vec(0u32..=7, 4),
    ) {
        let rho = i.max_exponents();
        let f = Monomial::new(raw.clone());
        let truncated = Monomial::new(
            raw.iter().zip(&rho).map(|(&a, &r)| a.min(r)).collect(),
        );
        prop_assert_eq!(i.colon(&f), i.colon(&truncated));
    }

    #[test]
    fn saturation_equals_single_colon_by_max_power(i in arb_ideal(4, 5, 3), v in 1usize..=4) {
        let rho_v = i.gens().iter().map(|g| g.exponent(v)).max().unwrap_or(0);
        let expected = i.colon(&Monomial::pure_power(4, v, rho_v.max(1)));
        prop_assert_eq!(i.saturate(v), expected);
    }

    #[test]
    fn membership_distributes_over_sum_and_intersection(
        i in arb_ideal(3, 4, 2),
        j in arb_ideal(3, 4, 2),
        m in arb_monomial(3, 5),
    ) {
        prop_assert_eq!(i.sum(&j).member(&m), i.member(&m) || j.member(&m));
        prop_assert_eq!(i.intersect(&j).member(&m), i.member(&m) && j.member(&m));
    }

    #[test]
    fn w_action_preserves_equality_both_ways(
        i in arb_ideal(3, 4, 2),
        j in arb_ideal(3, 4, 2),
        w in prop::collection::vec(1u32..=3, 3),
    ) {
        prop_assert_eq!(i == j, i.w_action(&w) == j.w_action(&w));
    }

    #[test]
    fn product_members_factor(i in arb_ideal(3, 3, 2), j in arb_ideal(3, 3, 2)) {
        // each generator of I*J is a product of members
        for g in i.product(&j).gens() {
            let factored = i.gens().iter().any(|a| {
                a.divides(g) && j.member(&g.div_gcd(a))
            });
            prop_assert!(factored, "generator {g} of the product does not factor");
        }
    }
}
