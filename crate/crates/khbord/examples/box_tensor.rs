//! Box tensor products of catalog modules and bimodules.

use khbord::bordered::{box_a_d, box_da_d, BoxOptions};
use khbord::paperdata::Catalog;

fn main() {
    let cat = Catalog::builtin();
    let opts = BoxOptions::default();

    let pair = cat.resolve("azbar*az").expect("catalog names");
    println!("azbar ⊠ az: {} generators, type {}", pair.len(), pair.kind());

    let az = cat.type_da("az").expect("az");
    let n = cat.type_d("cfd_dblbar_infty").expect("solid torus");
    let d = box_da_d(&az, &n, opts).expect("bounded");
    println!("az ⊠ doubled-bar ∞:");
    for (i, g) in d.generators().iter().enumerate() {
        println!("  δ({}) = {}", g.name, d.show(d.delta(i)));
    }

    let m = cat.type_a("cfa_U").expect("exterior");
    let c = box_a_d(&m, &cat.type_d("cfd_infty").expect("solid torus"), opts).expect("bounded");
    println!("cfa_U ⊠ cfd_infty: {:?}, homology dim {}", c.names(), c.homology_dim());
}
