//! Bordered modules over a strand algebra: type D, type A and type DA
//! structures, box tensor products and morphisms between them.

pub mod algebra;
pub mod boxing;
pub mod definition;
pub mod modules;
pub mod morphism;
pub mod sum;

pub use algebra::{Algebra, Elt, Side};
pub use boxing::{box_a_d, box_a_da, box_da_d, box_da_da, BoxOptions};
pub use definition::{ModuleDefinition, MorphismDefinition};
pub use modules::{Failure, Generator, TypeA, TypeD, TypeDA};
pub use morphism::{AMorphism, DAMorphism, DMorphism};
pub use sum::Sum;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BorderedError {
    #[error("algebra: {0}")]
    Algebra(String),
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("generator {0:?} appears twice")]
    DuplicateGenerator(String),
    #[error("idempotents do not match at {generator}: {detail}")]
    Idempotent { generator: String, detail: String },
    #[error("wrong kind: {0}")]
    Kind(String),
    #[error("bad arity: {0}")]
    Arity(String),
    #[error("box product needs more than {steps} steps; the pairing is not bounded")]
    Divergence { steps: usize },
    #[error("needs inputs of length {needed}, above the cap {cap}")]
    ArityCap { cap: usize, needed: usize },
    #[error("json: {0}")]
    Json(String),
    #[error(transparent)]
    Complex(#[from] crate::algebra::AlgebraError),
}

impl From<serde_json::Error> for BorderedError {
    fn from(e: serde_json::Error) -> Self {
        BorderedError::Json(e.to_string())
    }
}
