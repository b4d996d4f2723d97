//! Weighted oriented graphs and their structural reports.
//!
//! Vertices are labeled `1..=n`. An oriented edge `(u, v)` points from `u`
//! to `v`; at most one of `(u, v)`, `(v, u)` may be present, so the
//! underlying graph is simple.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vset::VertexSet;

/// A directed simple graph with a positive integer weight per vertex.
///
/// Invariants enforced at construction: no loops, no parallel or
/// anti-parallel duplicate edges, all weights >= 1, and every source vertex
/// (only outgoing edges) has weight 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedOrientedGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    weights: Vec<u32>,
}

/// A construction result: the validated graph plus human-readable notices
/// (currently only source-weight normalizations).
#[derive(Clone, Debug)]
pub struct ParsedGraph {
    pub graph: WeightedOrientedGraph,
    pub notices: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    n: usize,
    edges: Vec<(usize, usize)>,
    weights: Vec<u32>,
}

impl WeightedOrientedGraph {
    /// Validates and normalizes raw parts. Source vertices get their weight
    /// forced to 1 (this never changes the edge ideal); each such change is
    /// recorded as a notice.
    pub fn new(n: usize, edges: Vec<(usize, usize)>, weights: Vec<u32>) -> Result<ParsedGraph> {
        let mut graph = Self::validated(n, edges, weights)?;
        let mut notices = Vec::new();
        for v in 1..=n {
            if graph.is_source(v) && graph.weights[v - 1] != 1 {
                notices.push(format!(
                    "source vertex {v} has weight {}; normalized to 1",
                    graph.weights[v - 1]
                ));
                graph.weights[v - 1] = 1;
            }
        }
        Ok(ParsedGraph { graph, notices })
    }

    /// Validation without the source-weight convention. Induced subgraphs
    /// must carry their parent's weights verbatim even when the restriction
    /// turns a vertex into a source; source weights never enter any ideal,
    /// so nothing downstream can tell the difference.
    fn validated(n: usize, edges: Vec<(usize, usize)>, weights: Vec<u32>) -> Result<Self> {
        if weights.len() != n {
            return Err(Error::Malformed(format!(
                "expected {n} weights, got {}",
                weights.len()
            )));
        }
        for (v, &w) in weights.iter().enumerate() {
            if w == 0 {
                return Err(Error::NonpositiveWeight {
                    vertex: v + 1,
                    weight: 0,
                });
            }
        }
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &edges {
            for x in [u, v] {
                if x < 1 || x > n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge(u, v));
            }
        }
        let mut edges = edges;
        edges.sort_unstable();
        Ok(WeightedOrientedGraph { n, edges, weights })
    }

    /// Parses the canonical JSON document
    /// `{"n": int, "edges": [[from,to], ...], "weights": [int, ...]}`.
    pub fn parse(text: &str) -> Result<ParsedGraph> {
        let doc: GraphDoc =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::new(doc.n, doc.edges, doc.weights)
    }

    /// Serializes to the canonical JSON document, edges sorted
    /// lexicographically and keys in schema order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialization cannot fail")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn weight(&self, v: usize) -> u32 {
        assert!(v >= 1 && v <= self.n, "vertex {v} out of range");
        self.weights[v - 1]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        1..=self.n
    }

    /// Forgets orientation and weights.
    pub fn underlying(&self) -> SimpleGraph {
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        SimpleGraph::new(self.n, edges).expect("validated digraph yields a valid simple graph")
    }

    pub fn out_neighbors(&self, v: usize) -> VertexSet {
        self.edges
            .iter()
            .filter(|&&(u, _)| u == v)
            .map(|&(_, w)| w)
            .collect()
    }

    pub fn in_neighbors(&self, v: usize) -> VertexSet {
        self.edges
            .iter()
            .filter(|&&(_, w)| w == v)
            .map(|&(u, _)| u)
            .collect()
    }

    /// Out-, in-, open and closed neighborhoods of `v`.
    pub fn neighborhoods(&self, v: usize) -> Result<Neighborhoods> {
        if v < 1 || v > self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let outgoing = self.out_neighbors(v);
        let incoming = self.in_neighbors(v);
        let open = outgoing.union(incoming);
        Ok(Neighborhoods {
            outgoing,
            incoming,
            open,
            closed: open.with(v),
        })
    }

    /// Sink convention: empty out-neighborhood (isolated vertices included).
    pub fn is_sink(&self, v: usize) -> bool {
        self.out_neighbors(v).is_empty()
    }

    /// Source: only outgoing edges. Isolated vertices are not sources.
    pub fn is_source(&self, v: usize) -> bool {
        self.in_neighbors(v).is_empty() && !self.out_neighbors(v).is_empty()
    }

    /// Vertices of weight >= 2.
    pub fn v_plus(&self) -> VertexSet {
        self.vertices().filter(|&v| self.weights[v - 1] >= 2).collect()
    }

    pub fn all_v_plus_sink(&self) -> bool {
        self.v_plus().iter().all(|v| self.is_sink(v))
    }

    /// Orientation, weight and shape predicates consumed by the theorems.
    pub fn structure_report(&self) -> StructureReport {
        let g = self.underlying();
        let sinks = self.vertices().filter(|&v| self.is_sink(v)).collect();
        let sources = self.vertices().filter(|&v| self.is_source(v)).collect();
        let odd_girth = g.odd_girth();
        StructureReport {
            sinks,
            sources,
            v_plus: self.v_plus(),
            odd_girth,
            triangle_free: g.is_triangle_free(),
            isolated: g.isolated_vertices(),
            component_shapes: g.component_shapes(),
            all_v_plus_sink: self.all_v_plus_sink(),
        }
    }

    /// Induced subgraph on `s`, relabeled to `1..=|s|`. The label map sends
    /// each new label (position) to the original vertex.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<InducedSubgraph> {
        for v in s.iter() {
            if v > self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        let labels: Vec<usize> = s.iter().collect();
        let position = |v: usize| labels.iter().position(|&x| x == v).unwrap() + 1;
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| s.contains(u) && s.contains(v))
            .map(|&(u, v)| (position(u), position(v)))
            .collect();
        let weights = labels.iter().map(|&v| self.weights[v - 1]).collect();
        let graph = WeightedOrientedGraph::validated(labels.len(), edges, weights)?;
        Ok(InducedSubgraph { graph, labels })
    }

    /// The localization `D \ N[s]` for an independent set `s`.
    pub fn localization(&self, s: VertexSet) -> Result<InducedSubgraph> {
        let g = self.underlying();
        if !g.is_independent(s) {
            return Err(Error::NotIndependent(s.to_string()));
        }
        let mut removed = s;
        for v in s.iter() {
            removed = removed.union(g.neighbors(v));
        }
        self.induced_subgraph(removed.complement(self.n))
    }
}

impl Serialize for WeightedOrientedGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("WeightedOrientedGraph", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("edges", &self.edges)?;
        st.serialize_field("weights", &self.weights)?;
        st.end()
    }
}

/// Neighborhood quadruple of a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Neighborhoods {
    pub outgoing: VertexSet,
    pub incoming: VertexSet,
    pub open: VertexSet,
    pub closed: VertexSet,
}

/// Induced subgraph together with its relabeling map: `labels[i - 1]` is the
/// original vertex carrying new label `i`.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: WeightedOrientedGraph,
    pub labels: Vec<usize>,
}

/// Shape of one connected component (isolated vertices are reported
/// separately and do not appear here).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentShape {
    pub vertices: VertexSet,
    pub kind: ShapeKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", content = "size", rename_all = "snake_case")]
pub enum ShapeKind {
    /// Complete graph on `size >= 2` vertices; `Clique(2)` is a single edge.
    Clique(usize),
    Other(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub sinks: VertexSet,
    pub sources: VertexSet,
    pub v_plus: VertexSet,
    /// Length of the shortest odd cycle; `None` when the graph is bipartite.
    pub odd_girth: Option<usize>,
    pub triangle_free: bool,
    pub isolated: VertexSet,
    pub component_shapes: Vec<ComponentShape>,
    pub all_v_plus_sink: bool,
}

impl StructureReport {
    /// Every non-isolated component is a clique. Isolated vertices count as
    /// cliques of size 1, so they never spoil this predicate.
    pub fn is_disjoint_union_of_cliques(&self) -> bool {
        self.component_shapes
            .iter()
            .all(|c| matches!(c.kind, ShapeKind::Clique(_)))
    }

    /// Every non-isolated component is a single edge. The isolated set is
    /// reported alongside so callers can apply the strict reading too.
    pub fn is_disjoint_union_of_edges(&self) -> bool {
        self.component_shapes
            .iter()
            .all(|c| matches!(c.kind, ShapeKind::Clique(2)))
    }
}

/// An undirected simple graph on `{1, ..., n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<SimpleGraph> {
        let mut seen = std::collections::HashSet::new();
        let mut normalized = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            for x in [u, v] {
                if x < 1 || x > n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(Error::DuplicateEdge(u, v));
            }
            normalized.push(e);
        }
        normalized.sort_unstable();
        Ok(SimpleGraph { n, edges: normalized })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        let mut s = VertexSet::EMPTY;
        for &(a, b) in &self.edges {
            if a == v {
                s.insert(b);
            } else if b == v {
                s.insert(a);
            }
        }
        s
    }

    /// Per-vertex adjacency bitmasks, indexed by vertex label.
    pub fn adjacency(&self) -> Vec<VertexSet> {
        let mut adj = vec![VertexSet::EMPTY; self.n + 1];
        for &(a, b) in &self.edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }

    pub fn is_independent(&self, s: VertexSet) -> bool {
        self.edges
            .iter()
            .all(|&(a, b)| !(s.contains(a) && s.contains(b)))
    }

    pub fn isolated_vertices(&self) -> VertexSet {
        let adj = self.adjacency();
        (1..=self.n).filter(|&v| adj[v].is_empty()).collect()
    }

    /// Connected components as vertex sets, isolated vertices included.
    pub fn components(&self) -> Vec<VertexSet> {
        let adj = self.adjacency();
        let mut seen = VertexSet::EMPTY;
        let mut out = Vec::new();
        for start in 1..=self.n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::singleton(start);
            let mut queue = vec![start];
            while let Some(v) = queue.pop() {
                for w in adj[v].iter() {
                    if !comp.contains(w) {
                        comp.insert(w);
                        queue.push(w);
                    }
                }
            }
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    /// Shapes of the non-isolated components.
    pub fn component_shapes(&self) -> Vec<ComponentShape> {
        let adj = self.adjacency();
        self.components()
            .into_iter()
            .filter(|c| c.len() >= 2)
            .map(|c| {
                let is_clique = c
                    .iter()
                    .all(|v| c.without(v).is_subset_of(adj[v]));
                let kind = if is_clique {
                    ShapeKind::Clique(c.len())
                } else {
                    ShapeKind::Other(c.len())
                };
                ComponentShape { vertices: c, kind }
            })
            .collect()
    }

    pub fn is_triangle_free(&self) -> bool {
        let adj = self.adjacency();
        self.edges
            .iter()
            .all(|&(a, b)| adj[a].intersection(adj[b]).is_empty())
    }

    pub fn is_bipartite(&self) -> bool {
        self.odd_girth().is_none()
    }

    /// Length of a shortest odd cycle, by parity BFS from every vertex.
    /// `None` when the graph is bipartite.
    pub fn odd_girth(&self) -> Option<usize> {
        let adj = self.adjacency();
        let mut best: Option<usize> = None;
        for root in 1..=self.n {
            let mut dist = vec![usize::MAX; self.n + 1];
            dist[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for w in adj[v].iter() {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            for &(a, b) in &self.edges {
                if dist[a] != usize::MAX && dist[b] != usize::MAX && dist[a] % 2 == dist[b] % 2 {
                    let len = dist[a] + dist[b] + 1;
                    if best.is_none_or(|g| len < g) {
                        best = Some(len);
                    }
                }
            }
        }
        best
    }

    /// Deletes a vertex, relabeling the rest to `1..=n-1`.
    pub fn delete_vertex(&self, v: usize) -> SimpleGraph {
        assert!(v >= 1 && v <= self.n, "vertex {v} out of range");
        let relabel = |x: usize| if x > v { x - 1 } else { x };
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| a != v && b != v)
            .map(|&(a, b)| (relabel(a), relabel(b)))
            .collect();
        SimpleGraph::new(self.n - 1, edges).expect("vertex deletion preserves validity")
    }

    /// Induced subgraph on `s`, relabeled to `1..=|s|`.
    pub fn induced(&self, s: VertexSet) -> SimpleGraph {
        let labels: Vec<usize> = s.iter().collect();
        let position = |v: usize| labels.iter().position(|&x| x == v).unwrap() + 1;
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| s.contains(a) && s.contains(b))
            .map(|&(a, b)| (position(a), position(b)))
            .collect();
        SimpleGraph::new(labels.len(), edges).expect("induced subgraph preserves validity")
    }
}
