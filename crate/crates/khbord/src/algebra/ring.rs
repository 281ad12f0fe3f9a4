//! Scalars: the field F2 and the local ring R = F2[Q]/(Q^2).

use std::fmt;
use std::ops::{Add, AddAssign, Mul};

/// Quantum degree of the formal variable Q.
pub const Q_DEGREE: i32 = -2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2(pub bool);

impl F2 {
    pub const ZERO: F2 = F2(false);
    pub const ONE: F2 = F2(true);

    pub fn is_zero(self) -> bool {
        !self.0
    }
}

impl Add for F2 {
    type Output = F2;
    fn add(self, rhs: F2) -> F2 {
        F2(self.0 ^ rhs.0)
    }
}

impl AddAssign for F2 {
    fn add_assign(&mut self, rhs: F2) {
        self.0 ^= rhs.0;
    }
}

impl Mul for F2 {
    type Output = F2;
    fn mul(self, rhs: F2) -> F2 {
        F2(self.0 & rhs.0)
    }
}

impl fmt::Display for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 as u8)
    }
}

/// `unit + q·Q` with Q^2 = 0.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RElement {
    pub unit: bool,
    pub q: bool,
}

impl RElement {
    pub const ZERO: RElement = RElement { unit: false, q: false };
    pub const ONE: RElement = RElement { unit: true, q: false };
    pub const Q: RElement = RElement { unit: false, q: true };

    pub fn new(unit: bool, q: bool) -> Self {
        RElement { unit, q }
    }

    pub fn is_zero(self) -> bool {
        !self.unit && !self.q
    }

    pub fn is_unit(self) -> bool {
        self.unit
    }
}

impl Add for RElement {
    type Output = RElement;
    fn add(self, rhs: RElement) -> RElement {
        RElement { unit: self.unit ^ rhs.unit, q: self.q ^ rhs.q }
    }
}

impl AddAssign for RElement {
    fn add_assign(&mut self, rhs: RElement) {
        *self = *self + rhs;
    }
}

impl Mul for RElement {
    type Output = RElement;
    fn mul(self, rhs: RElement) -> RElement {
        RElement {
            unit: self.unit & rhs.unit,
            q: (self.unit & rhs.q) ^ (self.q & rhs.unit),
        }
    }
}

impl fmt::Display for RElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.unit, self.q) {
            (false, false) => write!(f, "0"),
            (true, false) => write!(f, "1"),
            (false, true) => write!(f, "Q"),
            (true, true) => write!(f, "1+Q"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all() -> Vec<RElement> {
        let mut v = Vec::new();
        for u in [false, true] {
            for q in [false, true] {
                v.push(RElement::new(u, q));
            }
        }
        v
    }

    #[test]
    fn f2_one_plus_one() {
        assert_eq!(F2::ONE + F2::ONE, F2::ZERO);
        assert_eq!(F2::ONE * F2::ONE, F2::ONE);
    }

    #[test]
    fn q_squared_vanishes() {
        assert_eq!(RElement::Q * RElement::Q, RElement::ZERO);
    }

    #[test]
    fn ring_axioms() {
        for a in all() {
            for b in all() {
                assert_eq!(a * b, b * a);
                assert_eq!(a + b, b + a);
                for c in all() {
                    assert_eq!((a * b) * c, a * (b * c));
                    assert_eq!(a * (b + c), a * b + a * c);
                }
            }
        }
    }

    #[test]
    fn units_are_exactly_unit_part() {
        for a in all() {
            let invertible = all().into_iter().any(|b| a * b == RElement::ONE);
            assert_eq!(invertible, a.is_unit());
        }
    }
}
