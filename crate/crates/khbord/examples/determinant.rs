//! Determinants of the alternating knots through seven crossings.

use khbord::khovanov::determinant;
use khbord::khovanov::knots::{two_bridge, ALTERNATING_KNOTS};

fn main() {
    for (name, cf) in ALTERNATING_KNOTS {
        let d = two_bridge(cf).expect("two-bridge knot");
        println!("{name:<4} {:?}: det {}", cf, determinant(&d).expect("a knot"));
    }
}
