//! Flow categories and bimodules at the level of signed counts, and the
//! chain-level calculus over Λ they induce.

mod complex;
mod data;
mod maps;
mod morse;
mod synthetic;

pub use complex::{build_complex, EntryViolation, GradedLambdaComplex, Layout};
pub use data::{grading_class, BimoduleCounts, BimoduleSpec, FlowCategoryData, GeneratorSpec, Incidence, Violation};
pub use maps::{
    chain_map, check_chain_map, check_homotopy, check_unitriangular, invert_unitriangular, GradedMap, HomotopyReport,
};
pub use morse::{morse_flow_category, CriticalPoint, MorseIncidence};
pub use synthetic::{homotopy_fixture, HomotopyFixture, SYNTHETIC_ENERGY_CONSTANT};

use crate::linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FlowcatError {
    #[error("validation failed with {} violation(s)", .0.len())]
    ValidationFailed(Vec<Violation>),
    #[error("d∘d is nonzero in {} entries", .0.len())]
    DSquaredFailed(Vec<EntryViolation>),
    #[error("map is not unitriangular")]
    NotUnitriangular,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("epsilon too large: action of {id} reaches omega")]
    EpsilonTooLarge { id: String },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
