//! Link diagrams and their Khovanov and Bar-Natan complexes.

pub mod braid;
pub mod cube;
pub mod determinant;
pub mod diagram;
pub mod frobenius;
pub mod knots;

pub use braid::{braid_to_diagram, parse_braid_word, Closure};
pub use cube::{
    build_complex, build_complex_with, mirror_complex, resolve, BuildOptions, CubeComplex, KhGenerator, ResolvedDiagram,
    DEFAULT_MAX_CROSSINGS, PROGRESS_INTERVAL,
};
pub use determinant::determinant;
pub use diagram::{parse_pd, Crossing, LinkDiagram, Sign};
pub use frobenius::{merge, split, Label, Ring};

use crate::algebra::{AlgebraError, Homology};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KhError {
    #[error("line {line}: cannot parse {token:?}")]
    Parse { line: usize, token: String },
    #[error("arc {arc} appears {count} times; every arc must appear exactly twice")]
    ArcMultiplicity { arc: u32, count: usize },
    #[error("basepoint {arc} is not an arc of the diagram")]
    Basepoint { arc: u32 },
    #[error("inconsistent orientation at crossing {crossing}")]
    Orientation { crossing: usize },
    #[error("{0}")]
    Braid(String),
    #[error("{crossings} crossings exceeds the limit of {max}")]
    TooManyCrossings { crossings: usize, max: usize },
    #[error("a resolution has more circles than a labeling mask can hold")]
    TooManyCircles,
    #[error("diagram is not planar: {faces} faces, expected {expected}")]
    NonPlanar { faces: usize, expected: usize },
    #[error("determinant needs a knot, got {components} components")]
    MultiComponent { components: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// True when every nonzero group sits on one diagonal q - 2h.
pub fn is_delta_thin(h: &Homology) -> bool {
    h.deltas().len() <= 1
}
