use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("no irreducible root system of type {family}{rank}")]
    InvalidType { family: char, rank: usize },

    #[error("cannot parse root system label `{0}` (expected e.g. A3, D5, E8, G2)")]
    BadLabel(String),

    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("node index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("the zero vector has no coroot")]
    ZeroVector,

    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error("positive-root enumeration exceeded height bound {bound}; the Cartan matrix is not of finite type")]
    RootEnumerationDiverged { bound: usize },

    #[error("{0:?} is not a root of this system")]
    NotARoot(Vec<i64>),

    #[error("folding: {0}")]
    Folding(String),

    #[error("pole: q^beta = 1 for beta = {root:?}")]
    Pole { root: Vec<i64> },

    #[error("the equivariant parameter t must be nonzero")]
    ZeroT,

    #[error("quantum parameter q[{index}] must be nonzero")]
    ZeroQ { index: usize },

    #[error("{0} requires a simply-laced root system with roots of norm 2")]
    NotSimplyLaced(&'static str),

    #[error("triple-intersection recursion leaves G[{i}][{j}][{k}] undetermined")]
    Undetermined { i: usize, j: usize, k: usize },

    #[error("group closure exceeded {bound} elements; generators do not span a finite subgroup")]
    GroupTooLarge { bound: usize },

    #[error("character table: {0}")]
    CharacterTable(String),

    #[error("McKay graph is not isomorphic to the Dynkin diagram")]
    NoNodeMatch,

    #[error("H(u) has a pole at u = {0}")]
    HPole(f64),

    #[error("imaginary residue {residue:e} exceeds tolerance {tolerance:e}")]
    ImaginaryResidue { residue: f64, tolerance: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
