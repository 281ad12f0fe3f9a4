//! Named diagrams: two-bridge knots from continued fractions and torus knots.

use super::braid::{braid_to_diagram, Closure};
use super::diagram::LinkDiagram;
use super::KhError;

/// Braid word whose 4-strand plat closure is the two-bridge knot `C(a1, ..., ak)`:
/// `σ2^a1 σ1^-a2 σ2^a3 ...`.
pub fn two_bridge_word(cf: &[i32]) -> Vec<i32> {
    let mut word = Vec::new();
    for (i, &a) in cf.iter().enumerate() {
        let g = if i % 2 == 0 { 2 } else { -1 };
        let s = a.signum();
        word.extend(std::iter::repeat(g * s).take(a.unsigned_abs() as usize));
    }
    word
}

pub fn two_bridge(cf: &[i32]) -> Result<LinkDiagram, KhError> {
    braid_to_diagram(&two_bridge_word(cf), 4, Closure::Plat)
}

/// Closure of `(σ1 ... σ_{p-1})^q`.
pub fn torus_knot(p: usize, q: usize) -> Result<LinkDiagram, KhError> {
    let word: Vec<i32> = (1..p as i32).collect::<Vec<_>>().repeat(q);
    braid_to_diagram(&word, p, Closure::Trace)
}

/// Alternating knots through seven crossings, as continued fractions.
pub const ALTERNATING_KNOTS: &[(&str, &[i32])] = &[
    ("3_1", &[3]),
    ("4_1", &[2, 1, 1]),
    ("5_1", &[5]),
    ("5_2", &[3, 1, 1]),
    ("6_1", &[4, 1, 1]),
    ("6_2", &[3, 1, 2]),
    ("6_3", &[2, 1, 1, 1, 1]),
    ("7_1", &[7]),
    ("7_2", &[5, 1, 1]),
    ("7_3", &[4, 2, 1]),
    ("7_4", &[3, 1, 3]),
    ("7_5", &[3, 2, 2]),
    ("7_6", &[2, 2, 1, 1, 1]),
    ("7_7", &[2, 1, 1, 1, 2]),
];
