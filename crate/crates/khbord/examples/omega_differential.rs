//! dΩ for the printed components of Ω, then with the arity-4 completion added.

use khbord::paperdata::Catalog;

fn main() {
    let cat = Catalog::builtin();
    let gp = cat.gprime();
    let printed = cat.da_morphism(&gp.omega).expect("omega");
    let full = cat.omega().expect("omega with completion");
    for (label, f) in [("printed", &printed), ("completed", &full)] {
        let d = f.differential(6).expect("within the cap");
        println!("{label}: {} rows, dΩ has {} nonzero entries", f.terms().len(), d.terms().len());
        for ((x, s), v) in d.terms().iter().take(3) {
            let inputs: Vec<&str> = s.iter().map(|&a| cat.algebra().name_of(a)).collect();
            println!("  ({}; {}) ↦ {}", f.source().generators()[*x].name, inputs.join(", "), f.target().show(v));
        }
    }
}
