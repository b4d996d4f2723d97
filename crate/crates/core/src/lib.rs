//! Exact computational algebra for edge ideals of weighted oriented graphs.
//!
//! The pipeline: a directed graph with positive vertex weights determines a
//! monomial edge ideal; its strong vertex covers index a primary
//! decomposition; symbolic and ordinary powers, degree and Koszul complexes,
//! multigraded Betti numbers and two independent depth computations feed a
//! Cohen-Macaulayness oracle; structural graph predicates decide the same
//! questions combinatorially, and the two routes cross-validate each other.
//!
//! All arithmetic is exact: integer exponent vectors for monomials,
//! fraction-free elimination over arbitrary-precision integers for ranks
//! over Q, modular elimination for GF(p).

pub mod cm;
pub mod complex;
pub mod error;
pub mod graph;
pub mod homology;
pub mod ideal;
pub mod sweep;
pub mod theorems;
pub mod vset;

pub use cm::{betti_table, degree_complex, depth, is_cm, koszul_complex, BettiTable, CmReport};
pub use complex::{
    independence_complex, is_matroid, minimal_vertex_covers, strong_vertex_covers,
    well_covered_report, SimplicialComplex, StrongCover,
};
pub use error::{Error, Result};
pub use graph::{SimpleGraph, StructureReport, WeightedOrientedGraph};
pub use homology::{homology_ranks, reisner_cm, sr_depth, Field, HomologyProfile};
pub use ideal::{edge_ideal, primary_decomposition, symbolic_power, Monomial, MonomialIdeal};
pub use vset::VertexSet;

/// Default cap on the number of degree-box points any single operation may
/// enumerate. Overridable through the explicit `max_box` parameters.
pub const DEFAULT_MAX_BOX: u128 = 1_000_000;
