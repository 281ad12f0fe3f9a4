//! The cone of the surgery map from the ∞ to the -1 solid torus, reduced to the 0 solid torus.

use khbord::bordered::morphism::{cancel_idempotent_arrows, iso_as_data};
use khbord::bordered::TypeD;
use khbord::paperdata::Catalog;

fn print(m: &TypeD) {
    for (i, g) in m.generators().iter().enumerate() {
        println!("  δ({}) = {}", g.name, m.show(m.delta(i)));
    }
}

fn main() {
    let cat = Catalog::builtin();
    let phi = cat.d_morphism("map_phi").expect("map_phi");
    println!("chain map failures: {}", phi.chain_map_failures().len());
    let cone = phi.mapping_cone();
    println!("cone:");
    print(&cone);
    let reduced = cancel_idempotent_arrows(&cone);
    println!("after cancelling idempotent arrows:");
    print(&reduced);
    let zero = cat.type_d("cfd_zero").expect("cfd_zero");
    println!("isomorphic to cfd_zero as data: {}", iso_as_data(&reduced, &zero).is_some());
}
