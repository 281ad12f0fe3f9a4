//! Merge and split maps of the Frobenius algebras F2[X]/(X^2) and F2[Q,X]/(X^2 - QX), Q^2 = 0.

use serde::{Deserialize, Serialize};

use crate::algebra::RElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ring {
    /// Khovanov homology over F2.
    F2,
    /// Bar-Natan homology over F2[Q]/(Q^2).
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Plus,
    Minus,
}

impl Label {
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Label::Minus
        } else {
            Label::Plus
        }
    }

    pub fn bit(self) -> bool {
        self == Label::Minus
    }

    pub fn degree(self) -> i32 {
        match self {
            Label::Plus => 1,
            Label::Minus => -1,
        }
    }
}

use Label::{Minus, Plus};

const ONE: RElement = RElement::ONE;
const Q: RElement = RElement::Q;

pub fn merge(a: Label, b: Label, ring: Ring) -> Option<(Label, RElement)> {
    match (a, b, ring) {
        (Plus, Plus, _) => Some((Plus, ONE)),
        (Plus, Minus, _) | (Minus, Plus, _) => Some((Minus, ONE)),
        (Minus, Minus, Ring::F2) => None,
        (Minus, Minus, Ring::R) => Some((Minus, Q)),
    }
}

pub fn split(a: Label, ring: Ring) -> &'static [((Label, Label), RElement)] {
    match (a, ring) {
        (Plus, Ring::F2) => &[((Plus, Minus), ONE), ((Minus, Plus), ONE)],
        (Plus, Ring::R) => &[((Plus, Minus), ONE), ((Minus, Plus), ONE), ((Plus, Plus), Q)],
        (Minus, _) => &[((Minus, Minus), ONE)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const LABELS: [Label; 2] = [Plus, Minus];

    #[test]
    fn merge_is_commutative() {
        for ring in [Ring::F2, Ring::R] {
            for a in LABELS {
                for b in LABELS {
                    assert_eq!(merge(a, b, ring), merge(b, a, ring));
                }
            }
        }
    }

    #[test]
    fn bar_natan_merge_of_minuses() {
        assert_eq!(merge(Minus, Minus, Ring::R), Some((Minus, RElement::Q)));
        assert_eq!(merge(Minus, Minus, Ring::F2), None);
    }

    #[test]
    fn maps_preserve_quantum_degree_up_to_shift() {
        // m and Δ both have degree -1; Q contributes -2.
        let qdeg = |r: RElement| if r.q { -2 } else { 0 };
        for ring in [Ring::F2, Ring::R] {
            for a in LABELS {
                for b in LABELS {
                    if let Some((c, r)) = merge(a, b, ring) {
                        assert_eq!(c.degree() + qdeg(r), a.degree() + b.degree() - 1);
                    }
                }
                for &((b, c), r) in split(a, ring) {
                    assert_eq!(b.degree() + c.degree() + qdeg(r), a.degree() - 1);
                }
            }
        }
    }

    #[test]
    fn coassociative_split_over_r() {
        // (Δ ⊗ 1)Δ = (1 ⊗ Δ)Δ on v+, as sums of (labels, R-coefficient).
        use std::collections::BTreeMap;
        let mut left: BTreeMap<(Label, Label, Label), RElement> = BTreeMap::new();
        let mut right = left.clone();
        for &((x, y), r) in split(Plus, Ring::R) {
            for &((u, v), s) in split(x, Ring::R) {
                *left.entry((u, v, y)).or_default() += r * s;
            }
            for &((u, v), s) in split(y, Ring::R) {
                *right.entry((x, u, v)).or_default() += r * s;
            }
        }
        left.retain(|_, v| !v.is_zero());
        right.retain(|_, v| !v.is_zero());
        assert_eq!(left, right);
    }
}
