//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate or anti-parallel edge between vertices {0} and {1}")]
    DuplicateEdge(usize, usize),
    #[error("weight of vertex {vertex} must be a positive integer, got {weight}")]
    NonpositiveWeight { vertex: usize, weight: i64 },
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex set {0} is not independent")]
    NotIndependent(String),
    #[error("{0} is not a face of the complex")]
    NotAFace(String),
    #[error("{0} is not a prime modulus")]
    NotPrime(u32),
    #[error("operation undefined for the void complex")]
    VoidComplex,
    #[error("operation undefined for the zero ideal")]
    ZeroIdeal,
    #[error("operation undefined for the unit ideal")]
    UnitIdeal,
    #[error("ambient vertex count {n} exceeds the enumeration cap {cap}")]
    TooManyVertices { n: usize, cap: usize },
    #[error("degree box of size {size} exceeds cap {cap}")]
    BoxTooLarge { size: u128, cap: u128 },
    #[error("t must be at least {min}, got {t}")]
    InvalidT { t: usize, min: usize },
    #[error("k must be at least 1")]
    InvalidK,
    #[error("cover {0} is not a strong vertex cover of the graph")]
    NotStrongCover(String),
    #[error("depth methods disagree: betti gives {betti}, colon gives {colon}")]
    DepthMethodMismatch { betti: usize, colon: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
