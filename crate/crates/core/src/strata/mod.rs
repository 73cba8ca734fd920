//! Homogeneous posets, word posets and partitions, finite stratified sets
//! and their outer collaring.

mod collar;
mod poset;
mod words;

pub use collar::{
    boundary_to_collar, check_outer_product, collar_extend_map, regroup, split, CollaredPoint, OuterProductReport,
    StratifiedMap, StratifiedSet,
};
pub use poset::{subset_poset, HomogeneousPoset, Poset};
pub use words::{
    boundary_factorization, check_associativity, check_delta_monotone, check_delta_square, delta_map,
    enumerate_word_poset, Factorization, Partition, WordPoset,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StrataError {
    #[error("element {0:?} listed twice")]
    DuplicateElement(String),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("relation has a cycle through {0:?}")]
    NotAnOrder(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("poset is not homogeneous at {0:?}")]
    NotHomogeneous(String),
    #[error("{0:?} is not below {1:?}")]
    NotBelow(String, String),
    #[error("action does not increase from element #{from} to #{to}")]
    NonPositiveEnergy { from: usize, to: usize },
    #[error("face {face:?} of {cell:?} lies in a stratum not below it")]
    FaceViolatesStrata { face: String, cell: String },
    #[error("cell {cell:?} does not lie in the closure of stratum {stratum:?}")]
    NotInClosure { cell: String, stratum: String },
    #[error("coordinates are not indexed by the faces of {0:?}")]
    WrongCoordinates(String),
    #[error("collar coordinate outside [-r, 0]")]
    CoordOutOfRange,
    #[error("no unique stratum above {0:?} with the required faces")]
    NoCanonicalStratum(String),
    #[error("stratum lies below more than one maximal element")]
    NoUniqueTop,
    #[error("map is not compatible with the stratifications: {0}")]
    IncompatibleStrata(String),
}
