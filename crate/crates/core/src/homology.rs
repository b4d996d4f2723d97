//! Exact reduced simplicial homology ranks over Q or GF(p), and the
//! Reisner-type criteria built on them.
//!
//! Ranks over Q are computed by fraction-free (Bareiss) elimination on
//! arbitrary-precision integers: every division is exact, so no floating
//! point or rational normalization is involved. Ranks over GF(p) use plain
//! modular elimination.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::vset::VertexSet;

/// Coefficient field for homology and Betti numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Gf(u32),
}

impl Field {
    /// GF(p) for a prime `p`.
    pub fn gf(p: u32) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Gf(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Gf(p) => write!(f, "gf:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        match s {
            "q" | "Q" => Ok(Field::Rational),
            _ => {
                let p = s
                    .strip_prefix("gf:")
                    .and_then(|rest| rest.parse::<u32>().ok())
                    .ok_or_else(|| Error::Malformed(format!("unknown field {s:?}")))?;
                Field::gf(p)
            }
        }
    }
}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Reduced homology ranks of one complex: `ranks[k]` is the rank of the
/// (k-1)-st reduced homology, so the list runs from dimension -1 to dim.
/// The void complex has an empty (all-zero) profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub field: Field,
    pub ranks: Vec<usize>,
}

impl HomologyProfile {
    /// Rank of the i-th reduced homology, i >= -1. Zero outside the range.
    pub fn rank(&self, i: i64) -> usize {
        if i < -1 {
            return 0;
        }
        self.ranks.get((i + 1) as usize).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }
}

/// Exact reduced homology ranks of `delta` over `field`.
pub fn homology_ranks(delta: &SimplicialComplex, field: Field) -> HomologyProfile {
    if delta.is_void() {
        return HomologyProfile { field, ranks: Vec::new() };
    }
    // faces grouped by cardinality; group s spans the chain group in dim s-1
    let max_size = delta.facets().iter().map(|f| f.len()).max().unwrap_or(0);
    let mut by_size: Vec<Vec<VertexSet>> = vec![Vec::new(); max_size + 1];
    for f in delta.faces() {
        by_size[f.len()].push(f);
    }
    for group in &mut by_size {
        group.sort();
    }

    // boundary_rank[s] = rank of the boundary map from size-s faces down
    let mut boundary_rank = vec![0usize; max_size + 2];
    for s in 1..=max_size {
        boundary_rank[s] = rank_of_boundary(&by_size[s - 1], &by_size[s], field);
    }

    let ranks = (0..=max_size)
        .map(|s| by_size[s].len() - boundary_rank[s] - boundary_rank[s + 1])
        .collect();
    HomologyProfile { field, ranks }
}

/// Rank of the simplicial boundary map sending each face of `cols` to the
/// signed sum of its codimension-one subfaces (which all lie in `rows`).
fn rank_of_boundary(rows: &[VertexSet], cols: &[VertexSet], field: Field) -> usize {
    if rows.is_empty() || cols.is_empty() {
        return 0;
    }
    let row_index: std::collections::HashMap<VertexSet, usize> =
        rows.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut dense = vec![vec![0i64; cols.len()]; rows.len()];
    for (j, face) in cols.iter().enumerate() {
        for (pos, v) in face.iter().enumerate() {
            let sub = face.without(v);
            let i = row_index[&sub];
            dense[i][j] = if pos % 2 == 0 { 1 } else { -1 };
        }
    }
    match field {
        Field::Rational => rank_rational(dense),
        Field::Gf(p) => rank_mod_p(dense, p as u64),
    }
}

/// Fraction-free Gaussian elimination (Bareiss). Entries stay integral:
/// after each pivot step every entry is a minor of the input matrix divided
/// exactly by the previous pivot.
pub(crate) fn rank_rational(entries: Vec<Vec<i64>>) -> usize {
    let rows = entries.len();
    if rows == 0 {
        return 0;
    }
    let cols = entries[0].len();
    let mut m: Vec<Vec<BigInt>> = entries
        .into_iter()
        .map(|row| row.into_iter().map(BigInt::from).collect())
        .collect();
    let mut prev = BigInt::one();
    let mut rank = 0usize;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot_row) = (rank..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let (pivot_slice, rest) = m.split_at_mut(rank + 1);
        let pivot = &pivot_slice[rank];
        for row in rest.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            if factor.is_zero() {
                for j in (c + 1)..cols {
                    row[j] = &row[j] * &pivot[c] / &prev;
                }
            } else {
                for j in (c + 1)..cols {
                    row[j] = (&row[j] * &pivot[c] - &factor * &pivot[j]) / &prev;
                }
            }
        }
        prev = pivot[c].clone();
        debug_assert!(!prev.is_zero() && prev.abs() >= BigInt::one());
        rank += 1;
    }
    rank
}

/// Plain Gaussian elimination over GF(p).
pub(crate) fn rank_mod_p(entries: Vec<Vec<i64>>, p: u64) -> usize {
    let rows = entries.len();
    if rows == 0 {
        return 0;
    }
    let cols = entries[0].len();
    let reduce = |x: i64| x.rem_euclid(p as i64) as u64;
    let mut m: Vec<Vec<u64>> = entries
        .into_iter()
        .map(|row| row.into_iter().map(reduce).collect())
        .collect();
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let mut rank = 0usize;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot_row) = (rank..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let inv = mod_inverse(m[rank][c], p);
        for j in c..cols {
            m[rank][j] = mulmod(m[rank][j], inv);
        }
        for i in 0..rows {
            if i != rank && m[i][c] != 0 {
                let factor = m[i][c];
                for j in c..cols {
                    let sub = mulmod(factor, m[rank][j]);
                    m[i][j] = (m[i][j] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Reisner criterion: `delta` is Cohen-Macaulay over `field` iff for every
/// face F (including the empty face) the reduced homology of its link
/// vanishes below the link's dimension. The void complex counts as CM.
pub fn reisner_cm(delta: &SimplicialComplex, field: Field) -> Result<bool> {
    if delta.is_void() {
        return Ok(true);
    }
    for f in delta.faces() {
        let link = delta.link(f)?;
        let link_dim = link.dim().expect("link of a face is never void");
        let profile = homology_ranks(&link, field);
        for i in -1..link_dim {
            if profile.rank(i) != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Depth of the Stanley-Reisner ring of `delta`:
/// `min { |F| + 1 + i : F ∈ Δ, H̃_i(lk F) != 0 }`.
///
/// Every facet link is `{∅}` with nonvanishing H̃_{-1}, so the minimum is
/// attained; in particular the full simplex on `[n]` yields depth `n`.
pub fn sr_depth(delta: &SimplicialComplex, field: Field) -> Result<usize> {
    if delta.is_void() {
        return Err(Error::VoidComplex);
    }
    let mut best: Option<usize> = None;
    for f in delta.faces() {
        let link = delta.link(f)?;
        let link_dim = link.dim().expect("link of a face is never void");
        let profile = homology_ranks(&link, field);
        for i in -1..=link_dim {
            if profile.rank(i) != 0 {
                let candidate = (f.len() as i64 + 1 + i) as usize;
                if best.is_none_or(|b| candidate < b) {
                    best = Some(candidate);
                }
            }
        }
    }
    Ok(best.expect("facet links always contribute"))
}
