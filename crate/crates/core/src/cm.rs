//! The Cohen-Macaulayness engine: degree complexes, upper Koszul complexes,
//! multigraded Betti numbers, and depth by two independent methods.
//!
//! Betti numbers come from reduced homology of upper Koszul complexes; depth
//! is `n - pd` on one route and the minimum Stanley-Reisner depth of the
//! radical colon quotients on the other. The two must always agree, and
//! `DepthMethod::Both` enforces that loudly.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::complex::{independence_complex, strong_vertex_covers, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graph::WeightedOrientedGraph;
use crate::homology::{homology_ranks, sr_depth, Field};
use crate::ideal::{Monomial, MonomialIdeal};
use crate::vset::{VertexSet, MAX_VERTICES};

/// Generator-subset enumeration is used for Betti degrees up to this count.
pub const BETTI_SUBSET_GEN_CAP: usize = 16;

/// The degree complex `Δ_a(I) = {F | x^a ∉ I R[x_i^{-1} : i ∈ F]}`.
///
/// `F` is a face exactly when no generator divides `x^a` after discarding
/// the coordinates in `F`; the void complex comes back iff `x^a ∈ I`.
pub fn degree_complex(ideal: &MonomialIdeal, a: &Monomial) -> Result<SimplicialComplex> {
    let n = ideal.n();
    assert_eq!(a.n(), n, "degree vector dimension mismatch");
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices { n, cap: MAX_VERTICES });
    }
    // excess support of g: coordinates where g demands more than a provides
    let excess: Vec<u32> = ideal
        .gens()
        .iter()
        .map(|g| {
            (1..=n)
                .filter(|&v| g.exponent(v) > a.exponent(v))
                .collect::<VertexSet>()
                .mask()
        })
        .collect();
    let mut table = vec![false; 1usize << n];
    for (mask, entry) in table.iter_mut().enumerate() {
        *entry = excess.iter().all(|&x| x as usize & mask != x as usize);
    }
    SimplicialComplex::from_table(n, &table)
}

/// Facets of the degree complex of a symbolic power, by the cover-family
/// formula: a minimal cover `C` qualifies when
/// `Σ_{i∈L1} a_i + Σ_{j∈C\L1} ⌊a_j/w(j)⌋ <= t-1`, and the facets are the
/// independence facets whose complement qualifies.
pub fn symbolic_degree_facets(
    d: &WeightedOrientedGraph,
    t: usize,
    a: &Monomial,
) -> Result<Vec<VertexSet>> {
    if t < 1 {
        return Err(Error::InvalidT { t, min: 1 });
    }
    assert_eq!(a.n(), d.n(), "degree vector dimension mismatch");
    let qualifying: Vec<VertexSet> = strong_vertex_covers(d)?
        .into_iter()
        .filter(|sc| sc.minimal)
        .filter(|sc| {
            let mut total: u64 = 0;
            for i in sc.l1.iter() {
                total += a.exponent(i) as u64;
            }
            for j in sc.cover.difference(sc.l1).iter() {
                total += a.exponent(j) as u64 / d.weight(j) as u64;
            }
            total <= (t - 1) as u64
        })
        .map(|sc| sc.cover)
        .collect();
    let delta = independence_complex(&d.underlying())?;
    let facets = delta
        .facets()
        .iter()
        .copied()
        .filter(|s| qualifying.contains(&s.complement(d.n())))
        .collect();
    Ok(facets)
}

/// The upper Koszul complex `K^a(I)`: squarefree vectors `τ <= a` with
/// `x^{a-τ} ∈ I`. Void iff `x^a ∉ I`.
pub fn koszul_complex(ideal: &MonomialIdeal, a: &Monomial) -> Result<SimplicialComplex> {
    let n = ideal.n();
    assert_eq!(a.n(), n, "degree vector dimension mismatch");
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices { n, cap: MAX_VERTICES });
    }
    let support = a.support();
    let mut table = vec![false; 1usize << n];
    for tau in support.subsets() {
        let shifted = Monomial::new(
            (1..=n)
                .map(|v| a.exponent(v) - u32::from(tau.contains(v)))
                .collect(),
        );
        table[tau.mask() as usize] = ideal.member(&shifted);
    }
    SimplicialComplex::from_table(n, &table)
}

/// Multigraded Betti numbers of `R/I`, keyed by homological index and degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    n: usize,
    field: Field,
    entries: BTreeMap<(usize, Vec<u32>), usize>,
}

impl BettiTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Nonzero entries sorted by (homological index, degree).
    pub fn entries(&self) -> impl Iterator<Item = (usize, &[u32], usize)> {
        self.entries.iter().map(|((i, a), &r)| (*i, a.as_slice(), r))
    }

    pub fn rank(&self, i: usize, degree: &[u32]) -> usize {
        self.entries
            .get(&(i, degree.to_vec()))
            .copied()
            .unwrap_or(0)
    }

    /// Projective dimension of `R/I`.
    pub fn pd(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// `depth(R/I) = n - pd` by Auslander-Buchsbaum.
    pub fn depth(&self) -> usize {
        self.n - self.pd()
    }

    /// Graded-lex least degree among entries with the top homological index.
    fn pd_witness(&self) -> Option<(usize, Vec<u32>)> {
        let pd = self.pd();
        self.entries
            .keys()
            .filter(|(i, _)| *i == pd)
            .map(|(i, a)| (*i, a.clone()))
            .min_by(|(_, a), (_, b)| {
                let deg = |v: &Vec<u32>| v.iter().map(|&e| e as u64).sum::<u64>();
                deg(a).cmp(&deg(b)).then_with(|| a.cmp(b))
            })
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Entry<'a> {
            i: usize,
            degree: &'a [u32],
            rank: usize,
        }
        let rows: Vec<Entry> = self
            .entries
            .iter()
            .map(|((i, a), &r)| Entry { i: *i, degree: a, rank: r })
            .collect();
        serde_json::to_string(&rows).expect("betti serialization cannot fail")
    }
}

/// Candidate degrees for nonzero Betti numbers: all distinct lcms of
/// nonempty generator subsets when the generator count is small, otherwise
/// every point of the exponent box (both are exhaustive for the support of
/// the table; the cheaper one is used).
fn betti_degrees(ideal: &MonomialIdeal, max_box: u128) -> Result<Vec<Monomial>> {
    let gens = ideal.gens();
    let box_size = ideal.box_size();
    let subset_count = (gens.len() <= BETTI_SUBSET_GEN_CAP).then(|| 1u128 << gens.len());
    let use_subsets = match subset_count {
        Some(c) => c <= box_size,
        None => {
            if box_size > max_box {
                return Err(Error::BoxTooLarge { size: box_size, cap: max_box });
            }
            false
        }
    };
    if use_subsets {
        let k = gens.len();
        let mut lcms: Vec<Monomial> = Vec::with_capacity(1 << k);
        lcms.push(Monomial::unit(ideal.n()));
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for mask in 1usize..(1 << k) {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            let lcm = lcms[rest].lcm(&gens[low]);
            if seen.insert(lcm.exponents().to_vec()) {
                out.push(lcm.clone());
            }
            lcms.push(lcm);
        }
        out.sort();
        Ok(out)
    } else {
        if box_size > max_box {
            return Err(Error::BoxTooLarge { size: box_size, cap: max_box });
        }
        Ok(ideal.box_monomials().collect())
    }
}

/// The full multigraded Betti table of `R/I`, from Koszul-complex homology.
/// `β_{0,0} = 1` is recorded by convention. Requires `I` proper and nonzero.
pub fn betti_table(ideal: &MonomialIdeal, field: Field, max_box: u128) -> Result<BettiTable> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let mut entries = BTreeMap::new();
    entries.insert((0, vec![0u32; ideal.n()]), 1);
    for a in betti_degrees(ideal, max_box)? {
        let koszul = koszul_complex(ideal, &a)?;
        if koszul.is_void() {
            continue;
        }
        let profile = homology_ranks(&koszul, field);
        let top = koszul.dim().expect("nonvoid complex has a dimension");
        for i in -1..=top {
            let rank = profile.rank(i);
            if rank > 0 {
                let index = (i + 2) as usize;
                entries.insert((index, a.exponents().to_vec()), rank);
            }
        }
    }
    Ok(BettiTable { n: ideal.n(), field, entries })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DepthMethod {
    Betti,
    Colon,
    Both,
}

/// Evidence that `depth < dim`: either a top Betti entry or a colon monomial
/// whose radical quotient has small depth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CmWitness {
    BettiEntry { i: usize, degree: Vec<u32> },
    ColonMonomial { exponents: Vec<u32> },
}

/// Depth, dimension, projective dimension and the CM verdict for one ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmReport {
    pub depth: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth_colon: Option<usize>,
    pub dim: usize,
    pub pd: usize,
    pub cm: bool,
    pub field: Field,
    pub method: DepthMethod,
    pub witness: Option<CmWitness>,
}

fn depth_by_betti(ideal: &MonomialIdeal, field: Field, max_box: u128) -> Result<(usize, Option<(usize, Vec<u32>)>)> {
    let table = betti_table(ideal, field, max_box)?;
    Ok((table.depth(), table.pd_witness()))
}

/// `depth(R/I) = min over monomials f ∉ I of depth of R/√(I:f)`, with `f`
/// restricted to the exponent box (colon quotients are insensitive to
/// exponents beyond the box). Returns the depth and the first minimizing `f`.
///
/// Distinct radicals `√(I:f)` are few compared to box points, so their
/// Stanley-Reisner depths are cached by generator set.
fn depth_by_colon(ideal: &MonomialIdeal, field: Field, max_box: u128) -> Result<(usize, Monomial)> {
    let size = ideal.box_size();
    if size > max_box {
        return Err(Error::BoxTooLarge { size, cap: max_box });
    }
    let mut cache: std::collections::HashMap<Vec<Vec<u32>>, usize> = std::collections::HashMap::new();
    let mut best: Option<(usize, Monomial)> = None;
    for f in ideal.box_monomials() {
        if ideal.member(&f) {
            continue;
        }
        let radical = ideal.colon(&f).radical();
        let key: Vec<Vec<u32>> = radical.gens().iter().map(|g| g.exponents().to_vec()).collect();
        let d = match cache.get(&key) {
            Some(&d) => d,
            None => {
                let d = sr_depth(&radical.stanley_reisner_complex()?, field)?;
                cache.insert(key, d);
                d
            }
        };
        if best.as_ref().is_none_or(|(b, _)| d < *b) {
            best = Some((d, f));
        }
    }
    let (d, f) = best.expect("1 ∉ I for a proper ideal, so the box contributes");
    Ok((d, f))
}

/// Depth of `R/I` by the requested method(s), with dimension and CM verdict.
/// With `DepthMethod::Both` the two computations must coincide or an error
/// is returned. The zero ideal reports depth = dim = n.
pub fn depth(
    ideal: &MonomialIdeal,
    field: Field,
    method: DepthMethod,
    max_box: u128,
) -> Result<CmReport> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let n = ideal.n();
    if ideal.is_zero() {
        return Ok(CmReport {
            depth: n,
            depth_colon: matches!(method, DepthMethod::Colon | DepthMethod::Both).then_some(n),
            dim: n,
            pd: 0,
            cm: true,
            field,
            method,
            witness: None,
        });
    }
    let dim = ideal.krull_dim()?;
    let (depth, depth_colon, witness) = match method {
        DepthMethod::Betti => {
            let (d, w) = depth_by_betti(ideal, field, max_box)?;
            let witness = w.map(|(i, degree)| CmWitness::BettiEntry { i, degree });
            (d, None, witness)
        }
        DepthMethod::Colon => {
            let (d, f) = depth_by_colon(ideal, field, max_box)?;
            let witness = CmWitness::ColonMonomial { exponents: f.exponents().to_vec() };
            (d, Some(d), Some(witness))
        }
        DepthMethod::Both => {
            let (db, w) = depth_by_betti(ideal, field, max_box)?;
            let (dc, _) = depth_by_colon(ideal, field, max_box)?;
            if db != dc {
                return Err(Error::DepthMethodMismatch { betti: db, colon: dc });
            }
            let witness = w.map(|(i, degree)| CmWitness::BettiEntry { i, degree });
            (db, Some(dc), witness)
        }
    };
    let cm = depth == dim;
    Ok(CmReport {
        depth,
        depth_colon,
        dim,
        pd: n - depth,
        cm,
        field,
        method,
        witness: if cm { None } else { witness },
    })
}

/// Cohen-Macaulayness of `R/I` via the Betti route.
pub fn is_cm(ideal: &MonomialIdeal, field: Field, max_box: u128) -> Result<CmReport> {
    depth(ideal, field, DepthMethod::Betti, max_box)
}

/// Outcome of the unmixed-plus-colon-radicals criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnmixedColonReport {
    pub unmixed: bool,
    /// Minimal primes are equidimensional but embedded primes exist; the
    /// unmixedness failure is entirely due to embedded components.
    pub embedded_only: bool,
    pub colon_radical_failure: Option<Monomial>,
    pub cm: bool,
}

/// The independent CM criterion: `I` is CM iff it is unmixed and the radical
/// of every colon quotient `I : f` (with `f ∉ I` in the box) is CM in the
/// Reisner sense.
pub fn is_cm_unmixed_colon(
    ideal: &MonomialIdeal,
    field: Field,
    max_box: u128,
) -> Result<UnmixedColonReport> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    if ideal.is_zero() {
        return Ok(UnmixedColonReport {
            unmixed: true,
            embedded_only: false,
            colon_radical_failure: None,
            cm: true,
        });
    }
    let associated = ideal.associated_primes(max_box)?;
    let minimal = ideal.minimal_primes()?;
    let unmixed = associated.windows(2).all(|w| w[0].len() == w[1].len());
    let minimal_equidim = minimal.windows(2).all(|w| w[0].len() == w[1].len());
    let has_embedded = associated.iter().any(|p| !minimal.contains(p));
    let embedded_only = !unmixed && minimal_equidim && has_embedded;

    let size = ideal.box_size();
    if size > max_box {
        return Err(Error::BoxTooLarge { size, cap: max_box });
    }
    let mut cache: std::collections::HashMap<Vec<Vec<u32>>, bool> = std::collections::HashMap::new();
    let mut failure = None;
    for f in ideal.box_monomials() {
        if ideal.member(&f) {
            continue;
        }
        let radical = ideal.colon(&f).radical();
        let key: Vec<Vec<u32>> = radical.gens().iter().map(|g| g.exponents().to_vec()).collect();
        let cm = match cache.get(&key) {
            Some(&cm) => cm,
            None => {
                let cm = crate::homology::reisner_cm(&radical.stanley_reisner_complex()?, field)?;
                cache.insert(key, cm);
                cm
            }
        };
        if !cm {
            failure = Some(f);
            break;
        }
    }
    Ok(UnmixedColonReport {
        unmixed,
        embedded_only,
        cm: unmixed && failure.is_none(),
        colon_radical_failure: failure,
    })
}
