//! Monomials and monomial ideals: minimal generators, ideal arithmetic,
//! the edge ideal of a weighted oriented graph, its strong-cover primary
//! decomposition, and symbolic powers.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{strong_cover, strong_vertex_covers, SimplicialComplex, StrongCover};
use crate::error::{Error, Result};
use crate::graph::WeightedOrientedGraph;
use crate::vset::VertexSet;

/// `x_1^{a_1} ... x_n^{a_n}` as its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The unit monomial 1.
    pub fn unit(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    /// The variable `x_v` (1-based).
    pub fn variable(n: usize, v: usize) -> Self {
        Self::pure_power(n, v, 1)
    }

    /// `x_v^e`.
    pub fn pure_power(n: usize, v: usize, e: u32) -> Self {
        assert!(v >= 1 && v <= n, "variable {v} out of range 1..={n}");
        let mut exps = vec![0; n];
        exps[v - 1] = e;
        Monomial { exps }
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// Exponent of `x_v`, 1-based.
    pub fn exponent(&self, v: usize) -> u32 {
        self.exps[v - 1]
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Variables dividing the monomial.
    pub fn support(&self) -> VertexSet {
        (1..=self.n()).filter(|&v| self.exps[v - 1] > 0).collect()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.n(), other.n(), "ambient dimension mismatch");
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
            .collect();
        Monomial { exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        assert_eq!(self.n(), other.n(), "ambient dimension mismatch");
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a <= b)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.n(), other.n(), "ambient dimension mismatch");
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.min(b))
            .collect();
        Monomial { exps }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.n(), other.n(), "ambient dimension mismatch");
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.max(b))
            .collect();
        Monomial { exps }
    }

    /// `self / gcd(self, other)`, the colon quotient by a single monomial.
    pub fn div_gcd(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.n(), other.n(), "ambient dimension mismatch");
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.saturating_sub(b))
            .collect();
        Monomial { exps }
    }

    /// Coordinatewise exponent scaling `x^a -> x^(w*a)`.
    pub fn w_action(&self, w: &[u32]) -> Monomial {
        assert_eq!(self.n(), w.len(), "weight vector length mismatch");
        assert!(w.iter().all(|&wi| wi >= 1), "weights must be positive");
        let exps = self
            .exps
            .iter()
            .zip(w)
            .map(|(&a, &wi)| a.checked_mul(wi).expect("exponent overflow"))
            .collect();
        Monomial { exps }
    }

    pub fn power(&self, t: u32) -> Monomial {
        let exps = self
            .exps
            .iter()
            .map(|&a| a.checked_mul(t).expect("exponent overflow"))
            .collect();
        Monomial { exps }
    }

    pub fn radical(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&e| e.min(1)).collect(),
        }
    }
}

/// Graded lexicographic order: first by total degree, ties broken by the
/// exponent vector compared left to right. Generator lists are kept sorted
/// ascending; "graded-lex least" means the minimum in this order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.exps.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Monomial { exps: Vec::<u32>::deserialize(d)? })
    }
}

/// Drops every monomial divisible by another one in the set (and duplicates);
/// the result is the unique minimal generating set of the ideal the input
/// generates. Idempotent.
pub fn minimalize(gens: Vec<Monomial>) -> Vec<Monomial> {
    let mut sorted = gens;
    sorted.sort();
    sorted.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(sorted.len());
    // ascending graded-lex: a proper divisor always sorts strictly earlier
    'outer: for g in sorted {
        for k in &kept {
            if k.divides(&g) {
                continue 'outer;
            }
        }
        kept.push(g);
    }
    kept
}

/// A monomial ideal held by its minimal generating set, sorted graded-lex.
/// The zero ideal has no generators; the unit ideal is generated by 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

#[derive(Serialize, Deserialize)]
struct IdealDoc {
    n: usize,
    gens: Vec<Vec<u32>>,
}

impl MonomialIdeal {
    pub fn new(n: usize, gens: Vec<Monomial>) -> Self {
        for g in &gens {
            assert_eq!(g.n(), n, "generator dimension mismatch");
        }
        MonomialIdeal { n, gens: minimalize(gens) }
    }

    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, gens: Vec::new() }
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal { n, gens: vec![Monomial::unit(n)] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_unit()
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(|g| g.is_squarefree())
    }

    /// Ideal membership: some generator divides `m`.
    pub fn member(&self, m: &Monomial) -> bool {
        assert_eq!(m.n(), self.n, "ambient dimension mismatch");
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.member(g))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        assert_eq!(self.n, other.n, "ambient dimension mismatch");
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        MonomialIdeal::new(self.n, gens)
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        assert_eq!(self.n, other.n, "ambient dimension mismatch");
        let gens = self
            .gens
            .iter()
            .flat_map(|g| other.gens.iter().map(move |h| g.mul(h)))
            .collect();
        MonomialIdeal::new(self.n, gens)
    }

    /// `I^t` for `t >= 1`.
    pub fn power(&self, t: usize) -> MonomialIdeal {
        assert!(t >= 1, "power requires t >= 1");
        let mut acc = self.clone();
        for _ in 1..t {
            acc = acc.product(self);
        }
        acc
    }

    /// Intersection via the pairwise-lcm table, minimalized.
    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        assert_eq!(self.n, other.n, "ambient dimension mismatch");
        let gens = self
            .gens
            .iter()
            .flat_map(|g| other.gens.iter().map(move |h| g.lcm(h)))
            .collect();
        MonomialIdeal::new(self.n, gens)
    }

    /// `I : m` for a single monomial `m`.
    pub fn colon(&self, m: &Monomial) -> MonomialIdeal {
        assert_eq!(m.n(), self.n, "ambient dimension mismatch");
        let gens = self.gens.iter().map(|g| g.div_gcd(m)).collect();
        MonomialIdeal::new(self.n, gens)
    }

    /// `I : x_v^∞`, by iterating the colon until it stabilizes. The loop is
    /// asserted to finish within the largest `x_v`-exponent among generators.
    pub fn saturate(&self, v: usize) -> MonomialIdeal {
        assert!(v >= 1 && v <= self.n, "variable {v} out of range");
        let bound = self.gens.iter().map(|g| g.exponent(v)).max().unwrap_or(0) as usize;
        let xv = Monomial::variable(self.n, v);
        let mut current = self.clone();
        for _ in 0..bound {
            let next = current.colon(&xv);
            if next == current {
                return current;
            }
            current = next;
        }
        debug_assert_eq!(current.colon(&xv), current, "saturation loop bound violated");
        current
    }

    /// Exponents clamped to 0/1, then minimalized.
    pub fn radical(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.n, self.gens.iter().map(|g| g.radical()).collect())
    }

    /// Coordinatewise exponent scaling of every generator. The action
    /// preserves divisibility, so the image of a minimal generating set is
    /// already minimal.
    pub fn w_action(&self, w: &[u32]) -> MonomialIdeal {
        let gens: Vec<Monomial> = self.gens.iter().map(|g| g.w_action(w)).collect();
        let mut sorted = gens;
        sorted.sort();
        MonomialIdeal { n: self.n, gens: sorted }
    }

    /// Componentwise maxima of the generator exponents (the truncation box).
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut rho = vec![0u32; self.n];
        for g in &self.gens {
            for (r, &e) in rho.iter_mut().zip(g.exponents()) {
                *r = (*r).max(e);
            }
        }
        rho
    }

    /// Number of lattice points in the box `[0, rho]`.
    pub fn box_size(&self) -> u128 {
        self.max_exponents()
            .iter()
            .map(|&r| r as u128 + 1)
            .product()
    }

    /// All monomials in the box `[0, rho]`, in mixed-radix counter order
    /// (graded-free but deterministic).
    pub fn box_monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        let rho = self.max_exponents();
        let n = self.n;
        let mut current: Option<Vec<u32>> = Some(vec![0; n]);
        std::iter::from_fn(move || {
            let exps = current.clone()?;
            // advance the counter
            let mut next = exps.clone();
            let mut pos = n;
            loop {
                if pos == 0 {
                    current = None;
                    break;
                }
                pos -= 1;
                if next[pos] < rho[pos] {
                    next[pos] += 1;
                    for later in next.iter_mut().skip(pos + 1) {
                        *later = 0;
                    }
                    current = Some(next);
                    break;
                }
            }
            Some(Monomial::new(exps))
        })
    }

    /// Associated primes as variable supports: every monomial prime of the
    /// form `I : f` with `f` in the truncation box. Requires `I` proper and
    /// nonzero.
    pub fn associated_primes(&self, max_box: u128) -> Result<Vec<VertexSet>> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let size = self.box_size();
        if size > max_box {
            return Err(Error::BoxTooLarge { size, cap: max_box });
        }
        let mut primes = std::collections::BTreeSet::new();
        for f in self.box_monomials() {
            let quotient = self.colon(&f);
            let is_prime = !quotient.gens.is_empty()
                && quotient
                    .gens
                    .iter()
                    .all(|g| g.degree() == 1);
            if is_prime {
                primes.insert(quotient.gens.iter().map(|g| g.support()).fold(
                    VertexSet::EMPTY,
                    VertexSet::union,
                ));
            }
        }
        Ok(primes.into_iter().collect())
    }

    /// Stanley-Reisner complex of a squarefree monomial ideal: faces are the
    /// subsets whose product avoids the ideal. The zero ideal gives the full
    /// simplex, the unit ideal the void complex.
    pub fn stanley_reisner_complex(&self) -> Result<SimplicialComplex> {
        assert!(self.is_squarefree(), "Stanley-Reisner complex requires a squarefree ideal");
        if self.n > crate::vset::MAX_VERTICES {
            return Err(Error::TooManyVertices { n: self.n, cap: crate::vset::MAX_VERTICES });
        }
        let supports: Vec<u32> = self.gens.iter().map(|g| g.support().mask()).collect();
        let mut table = vec![false; 1usize << self.n];
        for (mask, entry) in table.iter_mut().enumerate() {
            *entry = supports.iter().all(|&s| s as usize & mask != s as usize);
        }
        SimplicialComplex::from_table(self.n, &table)
    }

    /// Krull dimension of `R/I`: `n` for the zero ideal, otherwise one plus
    /// the dimension of the Stanley-Reisner complex of the radical.
    pub fn krull_dim(&self) -> Result<usize> {
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        if self.is_zero() {
            return Ok(self.n);
        }
        let delta = self.radical().stanley_reisner_complex()?;
        let dim = delta.dim().expect("radical of a proper ideal has a nonvoid complex");
        Ok((dim + 1) as usize)
    }

    /// Minimal primes of `I`, as variable supports.
    pub fn minimal_primes(&self) -> Result<Vec<VertexSet>> {
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let delta = self.radical().stanley_reisner_complex()?;
        let mut primes: Vec<VertexSet> = delta
            .facets()
            .iter()
            .map(|f| f.complement(self.n))
            .collect();
        primes.sort();
        Ok(primes)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("ideal serialization cannot fail")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: IdealDoc =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        for g in &doc.gens {
            if g.len() != doc.n {
                return Err(Error::Malformed(format!(
                    "generator {g:?} has {} exponents, expected {}",
                    g.len(),
                    doc.n
                )));
            }
        }
        Ok(MonomialIdeal::new(
            doc.n,
            doc.gens.into_iter().map(Monomial::new).collect(),
        ))
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for MonomialIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MonomialIdeal", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("gens", &self.gens)?;
        st.end()
    }
}

/// `I(D) = (x_u x_v^{w(v)} | (u,v) an edge)`.
pub fn edge_ideal(d: &WeightedOrientedGraph) -> MonomialIdeal {
    let n = d.n();
    let gens = d
        .edges()
        .iter()
        .map(|&(u, v)| Monomial::variable(n, u).mul(&Monomial::pure_power(n, v, d.weight(v))))
        .collect();
    MonomialIdeal::new(n, gens)
}

/// The irreducible cover ideal `I_C = (x_i, x_j^{w(j)} | i in L1, j in C\L1)`
/// of a strong vertex cover. Validates that `cover` really is strong.
pub fn cover_ideal(d: &WeightedOrientedGraph, cover: VertexSet) -> Result<MonomialIdeal> {
    let sc = strong_cover(d, cover)?;
    Ok(cover_ideal_of(d, &sc))
}

/// Same construction from an already-validated strong cover.
pub fn cover_ideal_of(d: &WeightedOrientedGraph, sc: &StrongCover) -> MonomialIdeal {
    let n = d.n();
    let gens = sc
        .cover
        .iter()
        .map(|v| {
            if sc.l1.contains(v) {
                Monomial::variable(n, v)
            } else {
                Monomial::pure_power(n, v, d.weight(v))
            }
        })
        .collect();
    MonomialIdeal::new(n, gens)
}

/// The minimal primary decomposition `I(D) = ⋂_{C strong} I_C`, one
/// component per strong vertex cover, in canonical cover order.
pub fn primary_decomposition(d: &WeightedOrientedGraph) -> Result<Vec<MonomialIdeal>> {
    Ok(strong_vertex_covers(d)?
        .iter()
        .map(|sc| cover_ideal_of(d, sc))
        .collect())
}

/// The t-th symbolic power `I(D)^{(t)} = ⋂_{C minimal} I_C^t`, intersecting
/// over the minimal vertex covers only.
pub fn symbolic_power(d: &WeightedOrientedGraph, t: usize) -> Result<MonomialIdeal> {
    if t < 1 {
        return Err(Error::InvalidT { t, min: 1 });
    }
    let components: Vec<MonomialIdeal> = strong_vertex_covers(d)?
        .iter()
        .filter(|sc| sc.minimal)
        .map(|sc| cover_ideal_of(d, sc).power(t))
        .collect();
    let mut iter = components.into_iter();
    let first = iter.next().expect("every graph has a minimal vertex cover");
    Ok(iter.fold(first, |acc, next| acc.intersect(&next)))
}

/// The t-th symbolic power of an arbitrary monomial ideal, computed from
/// first principles: saturate `I^t` at each minimal prime and intersect.
/// Serves as an independent route to cross-check `symbolic_power`.
pub fn symbolic_power_of(ideal: &MonomialIdeal, t: usize) -> Result<MonomialIdeal> {
    if t < 1 {
        return Err(Error::InvalidT { t, min: 1 });
    }
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    if ideal.is_zero() {
        return Ok(ideal.clone());
    }
    let power = ideal.power(t);
    let components: Vec<MonomialIdeal> = ideal
        .minimal_primes()?
        .into_iter()
        .map(|p| {
            let mut comp = power.clone();
            for v in p.complement(ideal.n()).iter() {
                comp = comp.saturate(v);
            }
            comp
        })
        .collect();
    let mut iter = components.into_iter();
    let first = iter.next().expect("a proper nonzero ideal has a minimal prime");
    Ok(iter.fold(first, |acc, next| acc.intersect(&next)))
}
