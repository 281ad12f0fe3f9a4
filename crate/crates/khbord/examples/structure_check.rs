//! Structure equations: every shipped module passes, and a damaged copy fails.

use khbord::paperdata::Catalog;

fn main() {
    let mut cat = Catalog::builtin();
    let names: Vec<String> = cat.module_names().map(String::from).collect();
    for name in &names {
        let (m, dropped) = cat.load(name).expect("shipped data loads");
        let failures = m.check_structure();
        println!("{name:<22} {:<2} {:>2} generators, {} failures, {} dropped", m.kind(), m.len(), failures.len(), dropped.len());
    }

    let def = cat.module_definition_mut("azbar").expect("azbar");
    let removed = def.ops.remove(0);
    let coeff = removed.alg_out.as_deref().unwrap_or("1");
    println!("\nremoving {} ↦ {coeff} ⊗ {} from azbar:", removed.in_gen, removed.out_gen);
    let (m, _) = cat.load("azbar").expect("still loads");
    for f in m.check_structure().iter().take(3) {
        println!("  {f}");
    }
}
