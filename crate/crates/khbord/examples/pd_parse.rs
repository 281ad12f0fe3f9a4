//! Reads a PD code and reports crossing signs and homology.

use khbord::khovanov::{build_complex, parse_pd, Ring};

const TREFOIL: &str = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)";

fn main() {
    let text = std::env::args().nth(1).map(|p| std::fs::read_to_string(p).expect("readable file"));
    let d = parse_pd(text.as_deref().unwrap_or(TREFOIL)).expect("valid PD code");
    println!("{} crossings, n+ = {}, n- = {}, {} component(s)", d.len(), d.n_plus(), d.n_minus(), d.components());
    let h = build_complex(&d, false, Ring::F2).expect("within limits").homology();
    for (g, n) in &h.dims {
        println!("  h={:>3} q={:>3}: {n}", g.h, g.q);
    }
}
