//! Exterior algebra Λ*⟨γ1..γk⟩ ⊗ F2[Q]/(Q²), the surgery maps on it and the
//! change of basis that matches them with the Bar-Natan merge and split.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{f2_rank, RElement, SparseMap};
use crate::khovanov::{merge, split, Label, Ring};

use super::{Report, Status};

/// An element of Λ*⟨γ1..γk⟩ ⊗ R. Bit `i` of a monomial mask stands for γ_{i+1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorModel {
    k: usize,
    terms: BTreeMap<u32, RElement>,
}

impl ExteriorModel {
    pub fn zero(k: usize) -> Self {
        assert!(k < 31, "too many exterior generators");
        ExteriorModel { k, terms: BTreeMap::new() }
    }

    pub fn monomial(k: usize, mask: u32, coeff: RElement) -> Self {
        let mut e = Self::zero(k);
        e.add_term(mask, coeff);
        e
    }

    pub fn one(k: usize) -> Self {
        Self::monomial(k, 0, RElement::ONE)
    }

    /// γ_i, counting from 1.
    pub fn gamma(k: usize, i: usize) -> Self {
        assert!((1..=k).contains(&i), "γ_{i} outside 1..={k}");
        Self::monomial(k, 1 << (i - 1), RElement::ONE)
    }

    pub fn generators(&self) -> usize {
        self.k
    }

    pub fn add_term(&mut self, mask: u32, coeff: RElement) {
        assert!(mask >> self.k == 0, "monomial uses a generator beyond γ_{}", self.k);
        let c = self.terms.get(&mask).copied().unwrap_or_default() + coeff;
        if c.is_zero() {
            self.terms.remove(&mask);
        } else {
            self.terms.insert(mask, c);
        }
    }

    pub fn add(&self, other: &ExteriorModel) -> ExteriorModel {
        assert_eq!(self.k, other.k);
        let mut out = self.clone();
        for (&m, &c) in &other.terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn scale(&self, r: RElement) -> ExteriorModel {
        let mut out = Self::zero(self.k);
        for (&m, &c) in &self.terms {
            out.add_term(m, c * r);
        }
        out
    }

    /// ξ ∧ γ_i; signs are irrelevant over F2.
    pub fn wedge_gamma(&self, i: usize) -> ExteriorModel {
        let bit = 1u32 << (i - 1);
        let mut out = Self::zero(self.k);
        for (&m, &c) in &self.terms {
            if m & bit == 0 {
                out.add_term(m | bit, c);
            }
        }
        out
    }

    /// Same element viewed with `k` generators.
    pub fn widen(&self, k: usize) -> ExteriorModel {
        assert!(k >= self.k);
        ExteriorModel { k, terms: self.terms.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, RElement)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    /// Monomial basis of Λ*⟨γ1..γk⟩.
    pub fn basis(k: usize) -> impl Iterator<Item = u32> {
        0..(1u32 << k)
    }

    pub fn linear(&self, k_out: usize, f: impl Fn(u32) -> ExteriorModel) -> ExteriorModel {
        let mut out = Self::zero(k_out);
        for (&m, &c) in &self.terms {
            out = out.add(&f(m).scale(c));
        }
        out
    }
}

pub(crate) fn mask_name(mask: u32) -> String {
    if mask == 0 {
        return "1".into();
    }
    (0..32).filter(|i| mask >> i & 1 == 1).map(|i| format!("γ{}", i + 1)).collect::<Vec<_>>().join("∧")
}

impl fmt::Display for ExteriorModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&m, &c)| match (c.unit, c.q) {
                (true, false) => mask_name(m),
                (false, true) => format!("Q·{}", mask_name(m)),
                _ => format!("(1+Q)·{}", mask_name(m)),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurgeryKind {
    /// Λ_k → Λ_{k-1}, killing γ_k.
    Quotient,
    /// Λ_k → Λ_{k+1}, ξ ↦ ξ∧γ_{k+1} + Qξ.
    Split,
}

pub fn surgery_model(kind: SurgeryKind, xi: &ExteriorModel) -> ExteriorModel {
    let k = xi.generators();
    match kind {
        SurgeryKind::Split => {
            let w = xi.widen(k + 1);
            w.wedge_gamma(k + 1).add(&w.scale(RElement::Q))
        }
        SurgeryKind::Quotient => {
            assert!(k >= 1, "nothing to quotient");
            let bit = 1u32 << (k - 1);
            let mut out = ExteriorModel::zero(k - 1);
            for (m, c) in xi.terms() {
                if m & bit == 0 {
                    out.add_term(m, c);
                }
            }
            out
        }
    }
}

/// The change of basis from (γ1..γk, γk′) to (γ1..γk, γ_{k+1}); both use bit k for the last generator.
pub fn change_of_basis(k: usize, mask: u32) -> ExteriorModel {
    let gk = 1u32 << (k - 1);
    let last = 1u32 << k;
    let rest = mask & !(gk | last);
    let mut out = ExteriorModel::zero(k + 1);
    match (mask & gk != 0, mask & last != 0) {
        (_, false) => out.add_term(mask, RElement::ONE),
        (false, true) => {
            out.add_term(rest | gk, RElement::ONE);
            out.add_term(rest | last, RElement::ONE);
        }
        (true, true) => {
            out.add_term(rest | gk | last, RElement::ONE);
            out.add_term(rest | gk, RElement::Q);
        }
    }
    out
}

/// δ(ξ) = ξ ∧ γk′ + Qξ, into the model with γk′ as bit k.
fn delta(k: usize, mask: u32) -> ExteriorModel {
    surgery_model(SurgeryKind::Split, &ExteriorModel::monomial(k, mask, RElement::ONE))
}

/// m′(ξ) = ξ and m′(γk′ ∧ ξ) = 0.
fn m_prime(k: usize, mask: u32) -> ExteriorModel {
    if mask >> k & 1 == 1 {
        ExteriorModel::zero(k)
    } else {
        ExteriorModel::monomial(k, mask, RElement::ONE)
    }
}

/// Bar-Natan split of circle k into circles k and k+1, read through v₋ ⟺ γ present.
pub fn bn_split(k: usize, mask: u32) -> ExteriorModel {
    let bit = 1u32 << (k - 1);
    let rest = mask & !bit;
    let mut out = ExteriorModel::zero(k + 1);
    for &((a, b), c) in split(Label::from_bit(mask & bit != 0), Ring::R) {
        let m = rest | if a.bit() { bit } else { 0 } | if b.bit() { bit << 1 } else { 0 };
        out.add_term(m, c);
    }
    out
}

/// Bar-Natan merge of circles k and k+1 into circle k.
pub fn bn_merge(k: usize, mask: u32) -> ExteriorModel {
    let (bit, next) = (1u32 << (k - 1), 1u32 << k);
    let rest = mask & !(bit | next);
    let mut out = ExteriorModel::zero(k);
    if let Some((l, c)) = merge(Label::from_bit(mask & bit != 0), Label::from_bit(mask & next != 0), Ring::R) {
        out.add_term(rest | if l.bit() { bit } else { 0 }, c);
    }
    out
}

/// Rank over F2 of the change of basis on Λ_{k+1} ⊗ R, with basis (monomial, Q-power).
fn change_rank(k: usize) -> (usize, usize) {
    let n = 1usize << (k + 1);
    let mut entries = Vec::new();
    for mask in ExteriorModel::basis(k + 1) {
        for qpow in 0..2usize {
            let col = 2 * mask as usize + qpow;
            let img = change_of_basis(k, mask).scale(if qpow == 0 { RElement::ONE } else { RElement::Q });
            for (m, c) in img.terms() {
                if c.unit {
                    entries.push((col, 2 * m as usize + qpow));
                }
                if c.q {
                    entries.push((col, 2 * m as usize + 1));
                }
            }
        }
    }
    let map = SparseMap::from_entries(2 * n, 2 * n, &entries).expect("indices in range");
    (f2_rank(&map), 2 * n)
}

/// Checks C∘δ = Δ and m∘C = m′ on every basis element, and that C is invertible.
pub fn verify_basis_change(k: usize) -> Report {
    let check = format!("basis-change k={k}");
    if k == 0 {
        return Report::new(check, Status::Fail, "k must be at least 1".into());
    }
    let mut problems = Vec::new();
    for mask in ExteriorModel::basis(k) {
        let lhs = delta(k, mask).linear(k + 1, |m| change_of_basis(k, m));
        let rhs = bn_split(k, mask);
        if lhs != rhs {
            problems.push(format!("split at {}: C∘δ = {lhs}, Δ = {rhs}", mask_name(mask)));
        }
    }
    for mask in ExteriorModel::basis(k + 1) {
        let lhs = change_of_basis(k, mask).linear(k, |m| bn_merge(k, m));
        let rhs = m_prime(k, mask);
        if lhs != rhs {
            problems.push(format!("merge at {}: m∘C = {lhs}, m′ = {rhs}", mask_name(mask)));
        }
    }
    let (rank, dim) = change_rank(k);
    if rank != dim {
        problems.push(format!("change of basis has rank {rank} of {dim}"));
    }
    if problems.is_empty() {
        Report::new(
            check,
            Status::Pass,
            format!(
                "C∘δ = Δ on {} elements, m∘C = m′ on {} elements, C invertible (rank {rank})",
                1 << k,
                1 << (k + 1)
            ),
        )
    } else {
        Report::new(check, Status::Fail, problems.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_of_one() {
        let s = surgery_model(SurgeryKind::Split, &ExteriorModel::one(2));
        let want = ExteriorModel::gamma(3, 3).add(&ExteriorModel::one(3).scale(RElement::Q));
        assert_eq!(s, want);
    }

    #[test]
    fn quotient_kills_last_generator() {
        assert!(surgery_model(SurgeryKind::Quotient, &ExteriorModel::gamma(2, 2)).is_zero());
        assert_eq!(surgery_model(SurgeryKind::Quotient, &ExteriorModel::one(2)), ExteriorModel::one(1));
        assert_eq!(surgery_model(SurgeryKind::Quotient, &ExteriorModel::gamma(2, 1)), ExteriorModel::gamma(1, 1));
    }

    #[test]
    fn wedge_is_nilpotent() {
        let g = ExteriorModel::gamma(2, 1);
        assert!(g.wedge_gamma(1).is_zero());
        assert_eq!(g.wedge_gamma(2).to_string(), "γ1∧γ2");
    }

    #[test]
    fn change_of_unit_split_matches_bar_natan() {
        // v+ ↦ v+⊗v− + v−⊗v+ + Q v+⊗v+
        let lhs = delta(1, 0).linear(2, |m| change_of_basis(1, m));
        assert_eq!(lhs.to_string(), "Q·1 + γ1 + γ2");
        assert_eq!(bn_split(1, 0), lhs);
    }

    #[test]
    fn merge_of_two_minuses_is_q() {
        assert_eq!(bn_merge(1, 0b11), ExteriorModel::monomial(1, 1, RElement::Q));
    }

    #[test]
    fn basis_change_holds_for_small_k() {
        for k in 1..=4 {
            let r = verify_basis_change(k);
            assert_eq!(r.status, Status::Pass, "{}", r.detail);
        }
    }

    #[test]
    fn wrong_change_of_basis_is_caught() {
        let k = 1;
        let lhs = delta(k, 0).linear(k + 1, |m| if m == 0b10 { ExteriorModel::monomial(2, 0b10, RElement::ONE) } else { change_of_basis(k, m) });
        assert_ne!(lhs, bn_split(k, 0));
    }
}
