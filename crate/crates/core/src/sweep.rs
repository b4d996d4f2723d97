//! Instance enumeration and cross-validation sweeps: exhaustive families of
//! small weighted oriented graphs, deterministic random instances, and a
//! bounded worker pool for running the structural-vs-oracle comparisons.

use serde::Serialize;

use crate::cm::betti_table;
use crate::error::Result;
use crate::graph::{SimpleGraph, WeightedOrientedGraph};
use crate::homology::Field;
use crate::ideal::{edge_ideal, symbolic_power, MonomialIdeal, Monomial};
use crate::theorems::{ordinary_cm, powers_equal, TSpec};

/// SplitMix64: tiny, deterministic, identical across platforms. Sweeps must
/// be reproducible byte-for-byte, which rules out RNGs whose streams change
/// between library versions.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..n`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        // multiply-shift; adequate for test-instance sampling
        ((self.next_u64() as u128 * n as u128) >> 64) as u64
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len() as u64) as usize]
    }
}

fn edge_slots(n: usize) -> Vec<(usize, usize)> {
    let mut slots = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            slots.push((i, j));
        }
    }
    slots
}

/// All labeled connected simple graphs on exactly `n` vertices.
pub fn connected_graphs(n: usize) -> Vec<SimpleGraph> {
    let slots = edge_slots(n);
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << slots.len()) {
        let edges: Vec<(usize, usize)> = slots
            .iter()
            .enumerate()
            .filter(|(b, _)| mask & (1 << b) != 0)
            .map(|(_, &e)| e)
            .collect();
        let g = SimpleGraph::new(n, edges).expect("slot edges are valid");
        if g.components().len() == 1 {
            out.push(g);
        }
    }
    out
}

/// Every orientation of `g` combined with every weight vector drawn from
/// `weights`. Source weights are normalized by construction, so some
/// instances coincide; the enumeration is exhaustive regardless.
pub fn weighted_orientations(g: &SimpleGraph, weights: &[u32]) -> Vec<WeightedOrientedGraph> {
    let n = g.n();
    let edges = g.edges();
    let mut out = Vec::new();
    let weight_combos = weights.len().pow(n as u32);
    for orient in 0u32..(1u32 << edges.len()) {
        let directed: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .map(|(b, &(u, v))| if orient & (1 << b) != 0 { (v, u) } else { (u, v) })
            .collect();
        for combo in 0..weight_combos {
            let mut c = combo;
            let w: Vec<u32> = (0..n)
                .map(|_| {
                    let pick = weights[c % weights.len()];
                    c /= weights.len();
                    pick
                })
                .collect();
            let parsed = WeightedOrientedGraph::new(n, directed.clone(), w)
                .expect("oriented instance is valid");
            out.push(parsed.graph);
        }
    }
    out
}

/// A random weighted oriented graph: each undirected slot kept with
/// probability 1/2, then oriented and weighted uniformly.
pub fn random_instance(rng: &mut SplitMix64, n: usize, weights: &[u32]) -> WeightedOrientedGraph {
    let slots = edge_slots(n);
    let mut edges = Vec::new();
    for &(u, v) in &slots {
        match rng.below(4) {
            0 | 1 => {}
            2 => edges.push((u, v)),
            _ => edges.push((v, u)),
        }
    }
    let w: Vec<u32> = (0..n).map(|_| *rng.pick(weights)).collect();
    WeightedOrientedGraph::new(n, edges, w)
        .expect("random instance is valid")
        .graph
}

/// A random proper nonzero monomial ideal.
pub fn random_ideal(rng: &mut SplitMix64, n: usize, max_gens: usize, max_exp: u32) -> MonomialIdeal {
    let count = 1 + rng.below(max_gens as u64) as usize;
    let mut gens = Vec::with_capacity(count);
    while gens.len() < count {
        let exps: Vec<u32> = (0..n).map(|_| rng.below(max_exp as u64 + 1) as u32).collect();
        if exps.iter().any(|&e| e > 0) {
            gens.push(Monomial::new(exps));
        }
    }
    MonomialIdeal::new(n, gens)
}

/// Maps `f` over `items` on a bounded pool of `workers` threads, preserving
/// input order in the output.
pub fn parallel_map<T, R, F>(items: Vec<T>, workers: usize, f: F) -> Vec<R>
where
    T: Send + Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let workers = workers.max(1);
    if workers == 1 || items.len() <= 1 {
        return items.iter().map(&f).collect();
    }
    let chunk_size = items.len().div_ceil(workers);
    let mut results: Vec<Vec<R>> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk_size)
            .map(|chunk| scope.spawn(|| chunk.iter().map(&f).collect::<Vec<R>>()))
            .collect();
        for h in handles {
            results.push(h.join().expect("sweep worker panicked"));
        }
    });
    results.into_iter().flatten().collect()
}

/// Default worker count for sweeps.
pub fn default_workers() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(8)
}

/// A structural-vs-oracle disagreement, serialized with everything needed to
/// reproduce it: the graph, the ideals involved, and the Betti table when
/// one was computed.
#[derive(Clone, Debug, Serialize)]
pub struct Disagreement {
    pub theorem: String,
    pub graph: serde_json::Value,
    pub t: usize,
    pub structural: bool,
    pub oracle: serde_json::Value,
    pub ideals: serde_json::Value,
    pub betti: Option<serde_json::Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepOutcome {
    pub instances: usize,
    pub disagreements: Vec<Disagreement>,
}

fn json(text: String) -> serde_json::Value {
    serde_json::from_str(&text).expect("canonical serializers emit valid JSON")
}

/// Exhaustive equality sweep: all connected graphs on `1..=n_max` vertices,
/// all orientations, all weight vectors over `weights`, comparing the
/// structural criterion against computed equality at power `t`.
pub fn equality_sweep(n_max: usize, weights: &[u32], t: usize, workers: usize) -> Result<SweepOutcome> {
    let mut instances = Vec::new();
    for n in 1..=n_max {
        for g in connected_graphs(n) {
            instances.extend(weighted_orientations(&g, weights));
        }
    }
    equality_over(instances, t, workers)
}

/// Random equality sweep at fixed `n`, each instance checked at every power
/// in `ts`.
pub fn equality_random_sweep(
    n: usize,
    count: usize,
    ts: &[usize],
    weights: &[u32],
    seed: u64,
    workers: usize,
) -> Result<SweepOutcome> {
    let mut rng = SplitMix64::new(seed);
    let instances: Vec<WeightedOrientedGraph> =
        (0..count).map(|_| random_instance(&mut rng, n, weights)).collect();
    let mut total = SweepOutcome { instances: 0, disagreements: Vec::new() };
    for &t in ts {
        let outcome = equality_over(instances.clone(), t, workers)?;
        total.instances += outcome.instances;
        total.disagreements.extend(outcome.disagreements);
    }
    Ok(total)
}

fn equality_over(
    instances: Vec<WeightedOrientedGraph>,
    t: usize,
    workers: usize,
) -> Result<SweepOutcome> {
    let count = instances.len();
    let verdicts = parallel_map(instances, workers, |d| {
        let verdict = powers_equal(d, t, true)?;
        Ok::<_, crate::error::Error>((d.clone(), verdict))
    });
    let mut disagreements = Vec::new();
    for result in verdicts {
        let (d, verdict) = result?;
        if verdict.agreement == Some(false) {
            let ideal = edge_ideal(&d);
            disagreements.push(Disagreement {
                theorem: "powers_equal".into(),
                graph: json(d.to_json()),
                t,
                structural: verdict.structural,
                oracle: serde_json::json!({ "direct": verdict.direct }),
                ideals: serde_json::json!({
                    "edge_ideal": json(ideal.to_json()),
                    "ordinary_power": json(ideal.power(t).to_json()),
                    "symbolic_power": json(symbolic_power(&d, t)?.to_json()),
                }),
                betti: None,
            });
        }
    }
    Ok(SweepOutcome { instances: count, disagreements })
}

/// Exhaustive sweep of the square criterion: all connected graphs on
/// `1..=n_max` vertices, all orientations and weight vectors, comparing the
/// structural characterization of CM-ness of `I(D)^2` against the oracle.
pub fn cm_power2_sweep(
    n_max: usize,
    weights: &[u32],
    field: Field,
    max_box: u128,
    workers: usize,
) -> Result<SweepOutcome> {
    let mut instances = Vec::new();
    for n in 1..=n_max {
        for g in connected_graphs(n) {
            instances.extend(weighted_orientations(&g, weights));
        }
    }
    let count = instances.len();
    let verdicts = parallel_map(instances, workers, |d| {
        let verdict = ordinary_cm(d, TSpec::At(2), true, field, max_box)?;
        Ok::<_, crate::error::Error>((d.clone(), verdict))
    });
    let mut disagreements = Vec::new();
    for result in verdicts {
        let (d, verdict) = result?;
        if verdict.agreement == Some(false) {
            let ideal = edge_ideal(&d);
            let square = ideal.power(2);
            let betti = if square.is_zero() {
                None
            } else {
                Some(json(betti_table(&square, field, max_box)?.to_json()))
            };
            disagreements.push(Disagreement {
                theorem: "ordinary_cm_power2".into(),
                graph: json(d.to_json()),
                t: 2,
                structural: verdict.structural,
                oracle: serde_json::to_value(&verdict.oracle).expect("serializable"),
                ideals: serde_json::json!({
                    "edge_ideal": json(ideal.to_json()),
                    "square": json(square.to_json()),
                }),
                betti,
            });
        }
    }
    Ok(SweepOutcome { instances: count, disagreements })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_is_deterministic() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        let mut c = SplitMix64::new(43);
        assert_ne!(a.next_u64(), c.next_u64());
    }

    #[test]
    fn connected_graph_counts() {
        // labeled connected graphs: 1, 1, 4, 38
        assert_eq!(connected_graphs(1).len(), 1);
        assert_eq!(connected_graphs(2).len(), 1);
        assert_eq!(connected_graphs(3).len(), 4);
        assert_eq!(connected_graphs(4).len(), 38);
    }

    #[test]
    fn orientation_weight_enumeration() {
        let g = SimpleGraph::new(2, vec![(1, 2)]).unwrap();
        let all = weighted_orientations(&g, &[1, 2]);
        // 2 orientations x 4 weight vectors
        assert_eq!(all.len(), 8);
    }

    #[test]
    fn parallel_map_preserves_order() {
        let items: Vec<u64> = (0..1000).collect();
        let doubled = parallel_map(items.clone(), 4, |x| x * 2);
        assert_eq!(doubled, items.iter().map(|x| x * 2).collect::<Vec<_>>());
    }

    #[test]
    fn random_ideal_is_proper_nonzero() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..50 {
            let n = 1 + rng.below(4) as usize;
            let i = random_ideal(&mut rng, n, 5, 3);
            assert!(!i.is_zero() && !i.is_unit());
        }
    }

    #[test]
    fn tiny_equality_sweep_has_no_disagreements() {
        let outcome = equality_sweep(3, &[1, 2], 2, 2).unwrap();
        assert!(outcome.instances > 0);
        assert_eq!(outcome.disagreements.len(), 0);
    }
}
