//! The exterior-algebra surgery model and the change of basis to the Bar-Natan split.

use khbord::algebra::RElement;
use khbord::paperdata::exterior::{bn_split, change_of_basis};
use khbord::paperdata::{surgery_model, verify_basis_change, ExteriorModel, SurgeryKind};

fn main() {
    let xi = ExteriorModel::gamma(2, 1);
    let split = surgery_model(SurgeryKind::Split, &xi);
    println!("split(γ1) = {split}");
    println!("quotient(split(γ1)) = {}", surgery_model(SurgeryKind::Quotient, &split));
    println!("Q·γ1∧γ2 = {}", ExteriorModel::monomial(2, 0b11, RElement::Q));

    // C∘δ against the Bar-Natan split on Λ_2.
    let k = 2;
    for mask in ExteriorModel::basis(k) {
        let delta = surgery_model(SurgeryKind::Split, &ExteriorModel::monomial(k, mask, RElement::ONE));
        let moved = delta.linear(k + 1, |m| change_of_basis(k, m));
        println!("ξ = {mask:02b}: δ(ξ) = {:<20} C(δ(ξ)) = {:<26} Δ(ξ) = {}", delta.to_string(), moved.to_string(), bn_split(k, mask));
    }
    for k in 1..=4 {
        println!("{}", verify_basis_change(k));
    }
}
