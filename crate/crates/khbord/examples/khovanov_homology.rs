//! Khovanov homology of the trefoil and figure-eight over F2, unreduced and reduced.

use khbord::khovanov::knots::two_bridge;
use khbord::khovanov::{build_complex, is_delta_thin, Ring};

fn main() {
    for (name, cf) in [("3_1", &[3][..]), ("4_1", &[2, 1, 1][..])] {
        let d = two_bridge(cf).expect("two-bridge knot");
        for reduced in [false, true] {
            let h = build_complex(&d, reduced, Ring::F2).expect("small diagram").homology();
            let dims: Vec<String> = h.dims.iter().map(|(g, n)| format!("({},{})^{n}", g.h, g.q)).collect();
            println!(
                "{name} {:<9} total {:>2}, thin {}: {}",
                if reduced { "reduced" } else { "unreduced" },
                h.total(),
                is_delta_thin(&h),
                dims.join(" ")
            );
        }
    }
}
