//! Simplicial complexes on small vertex sets, vertex covers, and the
//! matroid / well-covered predicates.
//!
//! A complex is stored by its facets. Two degenerate complexes are
//! distinguished: the void complex (no faces at all) and the empty complex
//! `{∅}` whose only face is the empty set.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, WeightedOrientedGraph};
use crate::vset::{VertexSet, MAX_VERTICES};

fn check_cap(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::TooManyVertices { n, cap: MAX_VERTICES })
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    /// Maximal faces, canonically sorted. Empty exactly when the complex is
    /// void; the empty complex `{∅}` has the single facet `∅`.
    facets: Vec<VertexSet>,
    void: bool,
}

impl SimplicialComplex {
    pub fn void(n: usize) -> Result<Self> {
        check_cap(n)?;
        Ok(SimplicialComplex { n, facets: Vec::new(), void: true })
    }

    /// The complex `{∅}`.
    pub fn empty(n: usize) -> Result<Self> {
        check_cap(n)?;
        Ok(SimplicialComplex { n, facets: vec![VertexSet::EMPTY], void: false })
    }

    pub fn full_simplex(n: usize) -> Result<Self> {
        Self::from_faces(n, vec![VertexSet::full(n)])
    }

    /// Builds the complex generated by `faces` (keeps the maximal ones).
    /// An empty list yields the void complex.
    pub fn from_faces(n: usize, faces: Vec<VertexSet>) -> Result<Self> {
        check_cap(n)?;
        for f in &faces {
            if let Some(v) = f.iter().find(|&v| v > n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        if faces.is_empty() {
            return Self::void(n);
        }
        let mut facets: Vec<VertexSet> = Vec::new();
        for f in &faces {
            if faces.iter().all(|g| !(f.is_subset_of(*g) && f != g)) && !facets.contains(f) {
                facets.push(*f);
            }
        }
        facets.sort();
        Ok(SimplicialComplex { n, facets, void: false })
    }

    /// Builds a complex from a face-membership table indexed by bitmask.
    pub(crate) fn from_table(n: usize, table: &[bool]) -> Result<Self> {
        debug_assert_eq!(table.len(), 1 << n);
        if !table[0] {
            return Self::void(n);
        }
        let mut facets = Vec::new();
        for (mask, &is_face) in table.iter().enumerate() {
            if !is_face {
                continue;
            }
            let is_facet = (0..n).all(|b| {
                let bit = 1usize << b;
                mask & bit != 0 || !table[mask | bit]
            });
            if is_facet {
                facets.push(VertexSet::from_mask(mask as u32));
            }
        }
        facets.sort();
        Ok(SimplicialComplex { n, facets, void: false })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_void(&self) -> bool {
        self.void
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    /// Dimension: `None` for the void complex, `-1` for `{∅}`.
    pub fn dim(&self) -> Option<i64> {
        if self.void {
            None
        } else {
            Some(self.facets.iter().map(|f| f.len() as i64).max().unwrap_or(0) - 1)
        }
    }

    pub fn is_pure(&self) -> bool {
        self.facets
            .iter()
            .all(|f| f.len() == self.facets[0].len())
    }

    pub fn is_face(&self, f: VertexSet) -> bool {
        !self.void && self.facets.iter().any(|g| f.is_subset_of(*g))
    }

    /// All faces including `∅`, canonically sorted. Empty for the void complex.
    pub fn faces(&self) -> Vec<VertexSet> {
        let mut seen = std::collections::HashSet::new();
        for facet in &self.facets {
            for sub in facet.subsets() {
                seen.insert(sub);
            }
        }
        let mut out: Vec<VertexSet> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// Face-membership table indexed by bitmask over the ambient `n`.
    pub(crate) fn face_table(&self) -> Vec<bool> {
        let mut table = vec![false; 1 << self.n];
        for facet in &self.facets {
            for sub in facet.subsets() {
                table[sub.mask() as usize] = true;
            }
        }
        table
    }

    /// `lk_Δ(F) = {H \ F : F ⊆ H ∈ Δ}`.
    pub fn link(&self, f: VertexSet) -> Result<SimplicialComplex> {
        if !self.is_face(f) {
            return Err(Error::NotAFace(f.to_string()));
        }
        let facets = self
            .facets
            .iter()
            .filter(|g| f.is_subset_of(**g))
            .map(|g| g.difference(f))
            .collect();
        // facets of the link stay an antichain, so no re-minimalization
        let mut facets: Vec<VertexSet> = facets;
        facets.sort();
        Ok(SimplicialComplex { n: self.n, facets, void: false })
    }

    /// Number of faces of each cardinality `0..=dim+1`. Empty for void.
    pub fn face_counts(&self) -> Vec<usize> {
        if self.void {
            return Vec::new();
        }
        let mut counts = vec![0usize; self.facets.iter().map(|f| f.len()).max().unwrap_or(0) + 1];
        for f in self.faces() {
            counts[f.len()] += 1;
        }
        counts
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("complex serialization cannot fail")
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }
}

impl Serialize for SimplicialComplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        if self.void {
            let mut s = serializer.serialize_struct("SimplicialComplex", 2)?;
            s.serialize_field("n", &self.n)?;
            s.serialize_field("void", &true)?;
            s.end()
        } else {
            let mut s = serializer.serialize_struct("SimplicialComplex", 2)?;
            s.serialize_field("n", &self.n)?;
            s.serialize_field("facets", &self.facets)?;
            s.end()
        }
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Doc {
            n: usize,
            #[serde(default)]
            void: bool,
            #[serde(default)]
            facets: Option<Vec<VertexSet>>,
        }
        let doc = Doc::deserialize(deserializer)?;
        if doc.void {
            SimplicialComplex::void(doc.n).map_err(D::Error::custom)
        } else {
            let facets = doc
                .facets
                .ok_or_else(|| D::Error::custom("expected \"facets\" or \"void\": true"))?;
            SimplicialComplex::from_faces(doc.n, facets).map_err(D::Error::custom)
        }
    }
}

/// The independence complex `Δ(G)`: faces are the independent sets.
pub fn independence_complex(g: &SimpleGraph) -> Result<SimplicialComplex> {
    check_cap(g.n())?;
    let n = g.n();
    let adj = g.adjacency();
    let mut table = vec![false; 1 << n];
    table[0] = true;
    for mask in 1usize..(1 << n) {
        let v = mask.trailing_zeros() as usize + 1;
        let rest = mask & (mask - 1);
        table[mask] = table[rest] && (adj[v].mask() as usize & mask) == 0;
    }
    SimplicialComplex::from_table(n, &table)
}

/// All minimal vertex covers, by direct enumeration over subsets.
pub fn minimal_vertex_covers(g: &SimpleGraph) -> Result<Vec<VertexSet>> {
    check_cap(g.n())?;
    let n = g.n();
    let is_cover = |mask: u32| {
        g.edges()
            .iter()
            .all(|&(a, b)| mask & (1 << (a - 1)) != 0 || mask & (1 << (b - 1)) != 0)
    };
    let mut covers = Vec::new();
    for mask in 0u32..(1u32 << n) {
        if !is_cover(mask) {
            continue;
        }
        let minimal = (0..n).all(|b| mask & (1 << b) == 0 || !is_cover(mask & !(1 << b)));
        if minimal {
            covers.push(VertexSet::from_mask(mask));
        }
    }
    covers.sort();
    Ok(covers)
}

/// Smallest size of a vertex cover.
pub fn covering_number(g: &SimpleGraph) -> Result<usize> {
    Ok(minimal_vertex_covers(g)?
        .iter()
        .map(|c| c.len())
        .min()
        .unwrap_or(0))
}

/// A vertex cover with its `L1/L2/L3` partition.
///
/// `l1`: cover vertices with an out-edge leaving the cover; `l2`: remaining
/// cover vertices with an in-edge from outside; `l3`: cover vertices all of
/// whose neighbors lie inside the cover. The three parts partition the cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongCover {
    pub cover: VertexSet,
    pub l1: VertexSet,
    pub l2: VertexSet,
    pub l3: VertexSet,
    pub minimal: bool,
}

/// Computes the `L1/L2/L3` partition of a vertex cover of `d`'s underlying graph.
pub fn l_partition(d: &WeightedOrientedGraph, cover: VertexSet) -> (VertexSet, VertexSet, VertexSet) {
    let mut l1 = VertexSet::EMPTY;
    let mut l2 = VertexSet::EMPTY;
    let mut l3 = VertexSet::EMPTY;
    for v in cover.iter() {
        let outgoing = d.out_neighbors(v);
        let incoming = d.in_neighbors(v);
        if !outgoing.difference(cover).is_empty() {
            l1.insert(v);
        } else if !incoming.difference(cover).is_empty() {
            l2.insert(v);
        } else {
            l3.insert(v);
        }
    }
    (l1, l2, l3)
}

fn is_strong(d: &WeightedOrientedGraph, cover: VertexSet, l2: VertexSet, l3: VertexSet, minimal: bool) -> bool {
    debug_assert!(l3.is_subset_of(cover));
    minimal
        || l3.iter().all(|x| {
            d.in_neighbors(x)
                .iter()
                .any(|y| (l2.contains(y) || l3.contains(y)) && d.weight(y) >= 2)
        })
}

/// All strong vertex covers of `d`, canonically sorted by cover set.
pub fn strong_vertex_covers(d: &WeightedOrientedGraph) -> Result<Vec<StrongCover>> {
    check_cap(d.n())?;
    let g = d.underlying();
    let minimal_covers = minimal_vertex_covers(&g)?;
    let n = d.n();
    let is_cover = |mask: u32| {
        g.edges()
            .iter()
            .all(|&(a, b)| mask & (1 << (a - 1)) != 0 || mask & (1 << (b - 1)) != 0)
    };
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        if !is_cover(mask) {
            continue;
        }
        let cover = VertexSet::from_mask(mask);
        let (l1, l2, l3) = l_partition(d, cover);
        let minimal = minimal_covers.contains(&cover);
        if is_strong(d, cover, l2, l3, minimal) {
            out.push(StrongCover { cover, l1, l2, l3, minimal });
        }
    }
    out.sort_by_key(|c| c.cover);
    Ok(out)
}

/// Checks a single candidate cover and returns its partition when strong.
pub fn strong_cover(d: &WeightedOrientedGraph, cover: VertexSet) -> Result<StrongCover> {
    let g = d.underlying();
    let covers_all = g
        .edges()
        .iter()
        .all(|&(a, b)| cover.contains(a) || cover.contains(b));
    if !covers_all {
        return Err(Error::NotStrongCover(cover.to_string()));
    }
    let (l1, l2, l3) = l_partition(d, cover);
    let minimal = minimal_vertex_covers(&g)?.contains(&cover);
    if !is_strong(d, cover, l2, l3, minimal) {
        return Err(Error::NotStrongCover(cover.to_string()));
    }
    Ok(StrongCover { cover, l1, l2, l3, minimal })
}

/// Exchange property over all ordered face pairs with `|F| > |H|`.
pub fn is_matroid(delta: &SimplicialComplex) -> Result<bool> {
    check_cap(delta.n())?;
    let table = delta.face_table();
    let faces = delta.faces();
    for f in &faces {
        for h in &faces {
            if f.len() <= h.len() {
                continue;
            }
            let extends = f
                .difference(*h)
                .iter()
                .any(|x| table[h.with(x).mask() as usize]);
            if !extends {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WellCoveredReport {
    pub alpha: usize,
    pub well_covered: bool,
    pub in_w2: bool,
}

/// Independence number, well-coveredness, and membership in the class W2
/// (every vertex deletion stays well-covered with unchanged alpha).
pub fn well_covered_report(g: &SimpleGraph) -> Result<WellCoveredReport> {
    check_cap(g.n())?;
    let (alpha, well_covered) = alpha_and_well_covered(g)?;
    let in_w2 = well_covered
        && (1..=g.n()).all(|v| {
            let h = g.delete_vertex(v);
            match alpha_and_well_covered(&h) {
                Ok((a, wc)) => wc && a == alpha,
                Err(_) => false,
            }
        });
    Ok(WellCoveredReport { alpha, well_covered, in_w2 })
}

fn alpha_and_well_covered(g: &SimpleGraph) -> Result<(usize, bool)> {
    let delta = independence_complex(g)?;
    let alpha = delta.facets().iter().map(|f| f.len()).max().unwrap_or(0);
    let well_covered = delta.facets().iter().all(|f| f.len() == alpha);
    Ok((alpha, well_covered))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> SimpleGraph {
        SimpleGraph::new(n, (1..n).map(|i| (i, i + 1)).collect()).unwrap()
    }

    fn cycle(n: usize) -> SimpleGraph {
        SimpleGraph::new(n, (1..n).map(|i| (i, i + 1)).chain([(n, 1)]).collect()).unwrap()
    }

    fn complete(n: usize) -> SimpleGraph {
        let mut edges = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                edges.push((i, j));
            }
        }
        SimpleGraph::new(n, edges).unwrap()
    }

    fn vs(members: &[usize]) -> VertexSet {
        members.iter().copied().collect()
    }

    #[test]
    fn independence_complex_small_graphs() {
        let p3 = independence_complex(&path(3)).unwrap();
        assert_eq!(p3.facets(), &[vs(&[1, 3]), vs(&[2])]);

        let k3 = independence_complex(&complete(3)).unwrap();
        assert_eq!(k3.facets(), &[vs(&[1]), vs(&[2]), vs(&[3])]);
    }

    #[test]
    fn independence_complex_c5_matches_brute_force() {
        let g = cycle(5);
        // oracle: maximal independent sets by scanning all 2^5 subsets
        let mut expected = Vec::new();
        for mask in 0u32..32 {
            let s = VertexSet::from_mask(mask);
            if !g.is_independent(s) {
                continue;
            }
            let maximal = (1..=5)
                .all(|v| s.contains(v) || !g.is_independent(s.with(v)));
            if maximal {
                expected.push(s);
            }
        }
        expected.sort();
        assert_eq!(independence_complex(&g).unwrap().facets(), &expected[..]);
        assert_eq!(expected.len(), 5);
    }

    #[test]
    fn dim_equals_alpha_minus_one() {
        for g in [path(4), cycle(5), complete(4)] {
            let delta = independence_complex(&g).unwrap();
            let alpha = well_covered_report(&g).unwrap().alpha;
            assert_eq!(delta.dim(), Some(alpha as i64 - 1));
        }
    }

    #[test]
    fn minimal_covers_small_paths() {
        assert_eq!(
            minimal_vertex_covers(&path(3)).unwrap(),
            vec![vs(&[1, 3]), vs(&[2])]
        );
        assert_eq!(
            minimal_vertex_covers(&cycle(4)).unwrap(),
            vec![vs(&[1, 3]), vs(&[2, 4])]
        );
        assert_eq!(
            minimal_vertex_covers(&path(4)).unwrap(),
            vec![vs(&[1, 3]), vs(&[2, 3]), vs(&[2, 4])]
        );
    }

    #[test]
    fn cover_facet_complement_duality() {
        for g in [path(4), cycle(5), complete(4)] {
            let n = g.n();
            let covers = minimal_vertex_covers(&g).unwrap();
            let mut complements: Vec<VertexSet> =
                covers.iter().map(|c| c.complement(n)).collect();
            complements.sort();
            let facets = independence_complex(&g).unwrap().facets().to_vec();
            assert_eq!(complements, facets);
        }
    }

    #[test]
    fn strong_covers_path_family() {
        let d = WeightedOrientedGraph::new(4, vec![(1, 2), (2, 3), (3, 4)], vec![1, 2, 2, 1])
            .unwrap()
            .graph;
        let covers: Vec<VertexSet> = strong_vertex_covers(&d)
            .unwrap()
            .into_iter()
            .map(|c| c.cover)
            .collect();
        assert_eq!(
            covers,
            vec![vs(&[1, 3]), vs(&[1, 3, 4]), vs(&[2, 3]), vs(&[2, 3, 4]), vs(&[2, 4])]
        );
    }

    #[test]
    fn strong_covers_unit_weights_are_minimal_covers() {
        let d = WeightedOrientedGraph::new(4, vec![(1, 2), (2, 3), (3, 4)], vec![1; 4])
            .unwrap()
            .graph;
        let strong: Vec<VertexSet> = strong_vertex_covers(&d)
            .unwrap()
            .into_iter()
            .map(|c| c.cover)
            .collect();
        let minimal = minimal_vertex_covers(&d.underlying()).unwrap();
        assert_eq!(strong, minimal);
    }

    #[test]
    fn strong_covers_p3_weighted_middle() {
        let d = WeightedOrientedGraph::new(3, vec![(1, 2), (2, 3)], vec![1, 2, 1])
            .unwrap()
            .graph;
        let strong = strong_vertex_covers(&d).unwrap();
        let covers: Vec<VertexSet> = strong.iter().map(|c| c.cover).collect();
        assert_eq!(covers, vec![vs(&[1, 3]), vs(&[2]), vs(&[2, 3])]);
        // the non-minimal cover {2,3} has 3 in L3, witnessed by (2,3) with w(2)=2
        let c23 = strong.iter().find(|c| c.cover == vs(&[2, 3])).unwrap();
        assert_eq!(c23.l3, vs(&[3]));
        assert!(!c23.minimal);
    }

    #[test]
    fn strong_cover_partition_invariants() {
        let d = WeightedOrientedGraph::new(4, vec![(1, 2), (2, 3), (3, 4)], vec![1, 2, 2, 1])
            .unwrap()
            .graph;
        for c in strong_vertex_covers(&d).unwrap() {
            assert_eq!(c.l1.union(c.l2).union(c.l3), c.cover);
            assert!(c.l1.is_disjoint_from(c.l2));
            assert!(c.l1.is_disjoint_from(c.l3));
            assert!(c.l2.is_disjoint_from(c.l3));
            if c.minimal {
                assert!(c.l3.is_empty());
            }
        }
    }

    #[test]
    fn link_of_faces() {
        let triangle = SimplicialComplex::full_simplex(3).unwrap();
        let lk = triangle.link(vs(&[1])).unwrap();
        assert_eq!(lk.facets(), &[vs(&[2, 3])]);

        let delta = SimplicialComplex::from_faces(3, vec![vs(&[1, 3]), vs(&[2])]).unwrap();
        let lk = delta.link(vs(&[2])).unwrap();
        assert_eq!(lk.facets(), &[VertexSet::EMPTY]);

        let c5 = independence_complex(&cycle(5)).unwrap();
        let lk = c5.link(vs(&[1])).unwrap();
        assert_eq!(lk.facets(), &[vs(&[3]), vs(&[4])]);

        assert!(triangle.link(vs(&[4])).is_err());
    }

    #[test]
    fn matroid_checks() {
        let k3k2 = SimpleGraph::new(5, vec![(1, 2), (1, 3), (2, 3), (4, 5)]).unwrap();
        assert!(is_matroid(&independence_complex(&k3k2).unwrap()).unwrap());

        assert!(!is_matroid(&independence_complex(&path(3)).unwrap()).unwrap());

        let c4 = cycle(4);
        assert!(!is_matroid(&independence_complex(&c4).unwrap()).unwrap());

        assert!(is_matroid(&SimplicialComplex::full_simplex(3).unwrap()).unwrap());
        assert!(is_matroid(&SimplicialComplex::empty(2).unwrap()).unwrap());
    }

    #[test]
    fn well_covered_reports() {
        let r = well_covered_report(&cycle(5)).unwrap();
        assert_eq!((r.alpha, r.well_covered, r.in_w2), (2, true, true));

        let r = well_covered_report(&complete(3)).unwrap();
        assert_eq!((r.alpha, r.well_covered, r.in_w2), (1, true, true));

        let r = well_covered_report(&path(3)).unwrap();
        assert_eq!((r.alpha, r.well_covered), (2, false));
        assert!(!r.in_w2);
    }

    #[test]
    fn void_and_empty_serialization() {
        let void = SimplicialComplex::void(3).unwrap();
        assert_eq!(void.to_json(), r#"{"n":3,"void":true}"#);
        assert_eq!(SimplicialComplex::parse(&void.to_json()).unwrap(), void);

        let empty = SimplicialComplex::empty(3).unwrap();
        assert_eq!(empty.to_json(), r#"{"n":3,"facets":[[]]}"#);
        assert_eq!(SimplicialComplex::parse(&empty.to_json()).unwrap(), empty);

        let delta = SimplicialComplex::from_faces(4, vec![vs(&[1, 2]), vs(&[2, 3])]).unwrap();
        assert_eq!(SimplicialComplex::parse(&delta.to_json()).unwrap(), delta);
    }

    #[test]
    fn cap_enforced() {
        let big = SimpleGraph::new(MAX_VERTICES + 1, vec![]).unwrap();
        assert!(matches!(
            independence_complex(&big),
            Err(Error::TooManyVertices { .. })
        ));
    }

    #[test]
    fn faces_and_purity() {
        let delta = SimplicialComplex::from_faces(3, vec![vs(&[1, 2]), vs(&[3])]).unwrap();
        let faces = delta.faces();
        assert_eq!(faces.len(), 5); // ∅, {1}, {2}, {3}, {1,2}
        assert!(!delta.is_pure());
        assert!(delta.is_face(VertexSet::EMPTY));
        assert!(!delta.is_face(vs(&[1, 3])));
    }
}
