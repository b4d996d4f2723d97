//! Shared fixtures and lemma checks used by the lemma suite and the
//! acceptance suite. Each `check_*` function panics on the first violation
//! and returns the number of instances it examined.

// each test binary uses a different subset of these helpers
#![allow(dead_code)]

use edge_ideals::cm::{betti_table, degree_complex, is_cm, symbolic_degree_facets};
use edge_ideals::complex::{minimal_vertex_covers, strong_vertex_covers};
use edge_ideals::graph::{SimpleGraph, WeightedOrientedGraph};
use edge_ideals::homology::{homology_ranks, reisner_cm, Field};
use edge_ideals::ideal::{
    cover_ideal_of, edge_ideal, primary_decomposition, symbolic_power, symbolic_power_of,
    Monomial, MonomialIdeal,
};
use edge_ideals::sweep::{
    connected_graphs, parallel_map, random_ideal, random_instance, weighted_orientations,
    SplitMix64,
};
use edge_ideals::vset::VertexSet;
use edge_ideals::DEFAULT_MAX_BOX;

pub const BOX: u128 = DEFAULT_MAX_BOX;

pub fn graph(n: usize, edges: Vec<(usize, usize)>, weights: Vec<u32>) -> WeightedOrientedGraph {
    WeightedOrientedGraph::new(n, edges, weights).unwrap().graph
}

pub fn mono(exps: &[u32]) -> Monomial {
    Monomial::new(exps.to_vec())
}

pub fn ideal_of(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::new(n, gens.iter().map(|g| mono(g)).collect())
}

pub fn vs(members: &[usize]) -> VertexSet {
    members.iter().copied().collect()
}

/// All connected graphs on 1..=n_max vertices, every orientation, every
/// weight vector over `weights`.
pub fn exhaustive_instances(n_max: usize, weights: &[u32]) -> Vec<WeightedOrientedGraph> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for g in connected_graphs(n) {
            out.extend(weighted_orientations(&g, weights));
        }
    }
    out
}

/// Every labeled simple graph on exactly `n` vertices.
pub fn all_simple_graphs(n: usize) -> Vec<SimpleGraph> {
    let mut slots = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            slots.push((i, j));
        }
    }
    (0u32..(1u32 << slots.len()))
        .map(|mask| {
            let edges: Vec<(usize, usize)> = slots
                .iter()
                .enumerate()
                .filter(|(b, _)| mask & (1 << b) != 0)
                .map(|(_, &e)| e)
                .collect();
            SimpleGraph::new(n, edges).unwrap()
        })
        .collect()
}

pub fn complete_graph_edges(n: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            edges.push((i, j));
        }
    }
    edges
}

/// The intersection of all primary components reproduces the edge ideal.
pub fn check_decomposition_identity(instances: &[WeightedOrientedGraph]) -> usize {
    for d in instances {
        let components = primary_decomposition(d).unwrap();
        let first = components.first().cloned().unwrap_or_else(|| MonomialIdeal::zero(d.n()));
        let intersection = components.iter().skip(1).fold(first, |acc, c| acc.intersect(c));
        assert_eq!(
            intersection,
            edge_ideal(d),
            "decomposition identity fails on {d:?}"
        );
    }
    instances.len()
}

/// `I^t ⊆ I^{(t)}`: every generator of the ordinary power is a member of
/// the symbolic power.
pub fn check_spowers_containment(instances: &[WeightedOrientedGraph], ts: &[usize]) -> usize {
    let mut checked = 0;
    for d in instances {
        let ideal = edge_ideal(d);
        for &t in ts {
            let ordinary = ideal.power(t);
            let symbolic = symbolic_power(d, t).unwrap();
            for g in ordinary.gens() {
                assert!(
                    symbolic.member(g),
                    "I^{t} ⊄ I^({t}) on {d:?}: generator {g} escapes"
                );
            }
            checked += 1;
        }
    }
    checked
}

/// Saturation commutes with intersections and powers.
pub fn check_local_commutes(seed: u64, rounds: usize) -> usize {
    let mut rng = SplitMix64::new(seed);
    for _ in 0..rounds {
        let n = 2 + rng.below(3) as usize;
        let i = random_ideal(&mut rng, n, 4, 3);
        let j = random_ideal(&mut rng, n, 4, 3);
        for v in 1..=n {
            assert_eq!(
                i.intersect(&j).saturate(v),
                i.saturate(v).intersect(&j.saturate(v)),
                "saturation/intersection mismatch: I={i:?}, J={j:?}, v={v}"
            );
        }
        for t in 2..=3 {
            for v in 1..=n {
                assert_eq!(
                    i.power(t).saturate(v),
                    i.saturate(v).power(t),
                    "saturation/power mismatch: I={i:?}, t={t}, v={v}"
                );
            }
        }
    }
    rounds
}

/// Localizing the symbolic power at a variable equals the
/// intersection of the t-th powers of the components avoiding it.
pub fn check_symbolic_localization(instances: &[WeightedOrientedGraph], ts: &[usize]) -> usize {
    let mut checked = 0;
    for d in instances {
        let covers = strong_vertex_covers(d).unwrap();
        for &t in ts {
            let symbolic = symbolic_power(d, t).unwrap();
            for j in 1..=d.n() {
                let localized = symbolic.saturate(j);
                let surviving: Vec<MonomialIdeal> = covers
                    .iter()
                    .filter(|sc| sc.minimal && !sc.cover.contains(j))
                    .map(|sc| cover_ideal_of(d, sc).power(t))
                    .collect();
                let first = surviving
                    .first()
                    .cloned()
                    .expect("some minimal cover always avoids j");
                let expected = surviving.iter().skip(1).fold(first, |acc, c| acc.intersect(c));
                assert_eq!(localized, expected, "symbolic localization fails: {d:?}, t={t}, j={j}");
            }
            checked += 1;
        }
    }
    checked
}

/// The weighted action preserves equality, powers, and symbolic
/// powers.
pub fn check_w_action_identities(seed: u64, rounds: usize) -> usize {
    let mut rng = SplitMix64::new(seed);
    for _ in 0..rounds {
        let n = 2 + rng.below(3) as usize;
        let w: Vec<u32> = (0..n).map(|_| 1 + rng.below(3) as u32).collect();
        let i = random_ideal(&mut rng, n, 4, 2);
        let j = random_ideal(&mut rng, n, 4, 2);

        assert_eq!(i == j, i.w_action(&w) == j.w_action(&w), "w-action equality fails");
        for t in 2..=3 {
            assert_eq!(
                i.power(t).w_action(&w),
                i.w_action(&w).power(t),
                "w(I^t) != (wI)^t for I={i:?}, w={w:?}"
            );
        }
        let t = 2;
        assert_eq!(
            symbolic_power_of(&i, t).unwrap().w_action(&w),
            symbolic_power_of(&i.w_action(&w), t).unwrap(),
            "w(I^(t)) != (wI)^(t) for I={i:?}, w={w:?}"
        );
    }
    rounds
}

/// The Betti table is invariant under the weighted action up
/// to the degree relabeling `a -> w(a)`.
pub fn check_betti_w_relabel(seed: u64, rounds: usize, field: Field) -> usize {
    let mut rng = SplitMix64::new(seed);
    for _ in 0..rounds {
        let n = 2 + rng.below(3) as usize;
        let w: Vec<u32> = (0..n).map(|_| 1 + rng.below(3) as u32).collect();
        let i = random_ideal(&mut rng, n, 4, 2);
        let wi = i.w_action(&w);
        let table = betti_table(&i, field, BOX).unwrap();
        let wtable = betti_table(&wi, field, BOX).unwrap();
        let relabeled: std::collections::BTreeSet<(usize, Vec<u32>, usize)> = table
            .entries()
            .map(|(idx, a, r)| {
                let wa: Vec<u32> = a.iter().zip(&w).map(|(&e, &wi)| e * wi).collect();
                (idx, wa, r)
            })
            .collect();
        let actual: std::collections::BTreeSet<(usize, Vec<u32>, usize)> = wtable
            .entries()
            .map(|(idx, a, r)| (idx, a.to_vec(), r))
            .collect();
        assert_eq!(relabeled, actual, "betti relabeling fails for I={i:?}, w={w:?}");
    }
    rounds
}

/// Projective dimension (hence CM-ness) is invariant under the weighted action.
pub fn check_pd_w_invariance(seed: u64, rounds: usize, field: Field) -> usize {
    let mut rng = SplitMix64::new(seed);
    for _ in 0..rounds {
        let n = 2 + rng.below(3) as usize;
        let w: Vec<u32> = (0..n).map(|_| 1 + rng.below(3) as u32).collect();
        let i = random_ideal(&mut rng, n, 4, 2);
        let wi = i.w_action(&w);
        let a = is_cm(&i, field, BOX).unwrap();
        let b = is_cm(&wi, field, BOX).unwrap();
        assert_eq!(a.pd, b.pd, "pd changes under w: I={i:?}, w={w:?}");
        assert_eq!(a.cm, b.cm, "CM-ness changes under w: I={i:?}, w={w:?}");
    }
    rounds
}

/// If a symbolic power is CM, it stays CM after localizing the
/// graph at any vertex.
pub fn check_cm_localization_inherited(
    instances: &[WeightedOrientedGraph],
    ts: &[usize],
    field: Field,
) -> usize {
    let jobs: Vec<(WeightedOrientedGraph, usize)> = instances
        .iter()
        .flat_map(|d| ts.iter().map(move |&t| (d.clone(), t)))
        .collect();
    let results = parallel_map(jobs, 8, |(d, t)| {
        let report = is_cm(&symbolic_power(d, *t).unwrap(), field, BOX).unwrap();
        if !report.cm {
            return Ok::<usize, String>(0);
        }
        for v in 1..=d.n() {
            let localized = d.localization(VertexSet::singleton(v)).unwrap().graph;
            let sym = symbolic_power(&localized, *t).unwrap();
            if !is_cm(&sym, field, BOX).unwrap().cm {
                return Err(format!(
                    "CM not inherited by localization at {v}: {d:?}, t={t}"
                ));
            }
        }
        Ok(1)
    });
    let mut verified = 0;
    for r in results {
        verified += r.expect("localization inheritance violated");
    }
    verified
}

/// The cover-family facet formula agrees with the
/// directly computed degree complex of the symbolic power.
pub fn check_degree_complex_formula(seed: u64, samples: usize) -> usize {
    let mut rng = SplitMix64::new(seed);
    let mut done = 0;
    while done < samples {
        let n = 2 + rng.below(4) as usize; // 2..=5
        let d = random_instance(&mut rng, n, &[1, 2]);
        if edge_ideal(&d).is_zero() {
            continue;
        }
        let t = 1 + rng.below(3) as usize;
        let symbolic = symbolic_power(&d, t).unwrap();
        let rho = symbolic.max_exponents();
        let a = Monomial::new(
            rho.iter()
                .map(|&r| rng.below(r as u64 + 1) as u32)
                .collect(),
        );
        let delta = degree_complex(&symbolic, &a).unwrap();
        let via_formula = symbolic_degree_facets(&d, t, &a).unwrap();
        let direct: Vec<VertexSet> = if delta.is_void() {
            Vec::new()
        } else {
            delta.facets().to_vec()
        };
        assert_eq!(
            direct, via_formula,
            "degree-complex facet formula fails: {d:?}, t={t}, a={a}"
        );
        done += 1;
    }
    done
}

/// CM ideals have CM radicals.
pub fn check_radical_of_cm(instances: &[WeightedOrientedGraph], field: Field) -> usize {
    let mut verified = 0;
    for d in instances {
        let ideal = edge_ideal(d);
        if ideal.is_zero() {
            continue;
        }
        if is_cm(&ideal, field, BOX).unwrap().cm {
            let delta = ideal.radical().stanley_reisner_complex().unwrap();
            assert!(
                reisner_cm(&delta, field).unwrap(),
                "radical of CM ideal not CM: {d:?}"
            );
            verified += 1;
        }
    }
    verified
}

/// Connectivity: positive-dimensional degree complexes
/// of CM symbolic powers are connected.
pub fn check_degree_complex_connectivity(seed: u64, samples: usize, field: Field) -> usize {
    let mut rng = SplitMix64::new(seed);
    let mut verified = 0;
    let mut attempts = 0;
    while verified < samples && attempts < samples * 20 {
        attempts += 1;
        let n = 2 + rng.below(3) as usize; // 2..=4
        let d = random_instance(&mut rng, n, &[1, 2]);
        if edge_ideal(&d).is_zero() {
            continue;
        }
        let t = 1 + rng.below(2) as usize;
        let symbolic = symbolic_power(&d, t).unwrap();
        if !is_cm(&symbolic, field, BOX).unwrap().cm {
            continue;
        }
        let rho = symbolic.max_exponents();
        let a = Monomial::new(
            rho.iter()
                .map(|&r| rng.below(r as u64 + 1) as u32)
                .collect(),
        );
        let delta = degree_complex(&symbolic, &a).unwrap();
        if delta.is_void() || delta.dim() < Some(1) {
            continue;
        }
        let h0 = homology_ranks(&delta, field).rank(0);
        assert_eq!(
            h0, 0,
            "positive-dimensional degree complex of a CM symbolic power is disconnected: {d:?}, t={t}, a={a}"
        );
        verified += 1;
    }
    verified
}

/// Minimal covers are exactly the facet complements, and every minimal cover
/// is a strong cover.
pub fn check_cover_duality_and_strength(graphs: &[SimpleGraph]) -> usize {
    for g in graphs {
        let covers = minimal_vertex_covers(g).unwrap();
        let delta = edge_ideals::complex::independence_complex(g).unwrap();
        let mut complements: Vec<VertexSet> =
            delta.facets().iter().map(|f| f.complement(g.n())).collect();
        complements.sort();
        assert_eq!(covers, complements, "cover/facet duality fails on {g:?}");

        let d = WeightedOrientedGraph::new(g.n(), g.edges().to_vec(), vec![1; g.n()])
            .unwrap()
            .graph;
        let strong: Vec<VertexSet> = strong_vertex_covers(&d)
            .unwrap()
            .into_iter()
            .map(|c| c.cover)
            .collect();
        for c in &covers {
            assert!(strong.contains(c), "minimal cover {c} not strong on {g:?}");
        }
    }
    graphs.len()
}
