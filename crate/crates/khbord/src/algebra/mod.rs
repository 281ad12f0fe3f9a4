//! F2 linear algebra: sparse maps, Gaussian cancellation, bigraded complexes.

pub mod complex;
pub mod reduce;
pub mod ring;
pub mod sparse;

pub use complex::{homology_over_r, BasedModule, ChainComplex, GradedComplex, Grading, Homology, QComplex, RHomology};
pub use reduce::Reducer;
pub use ring::{RElement, F2, Q_DEGREE};
pub use sparse::{f2_rank, SparseMap};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("entry {from} -> {target} outside codomain of size {codomain}")]
    IndexOutOfRange { from: usize, target: usize, codomain: usize },
    #[error("map of shape {domain} -> {codomain} on a module with {generators} generators")]
    Shape { domain: usize, codomain: usize, generators: usize },
    #[error("{labels} labels for {generators} generators")]
    LabelCount { labels: usize, generators: usize },
    #[error("label {label:?} used by generators {first} and {second}")]
    DuplicateLabel { label: String, first: usize, second: usize },
    #[error("d∘d is nonzero on {generator}")]
    NotSquareZero { generator: String },
    #[error("{from} -> {target} has degree {found:?}, expected {expected:?}")]
    Degree { from: String, target: String, expected: (i32, i32), found: (i32, i32) },
    #[error("Q does not commute with d on {generator}")]
    QNotCommuting { generator: String },
    #[error("Q∘Q is nonzero on {generator}")]
    QNotSquareZero { generator: String },
}
