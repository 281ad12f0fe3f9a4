//! The mirror's homology is the dual: (h, q) goes to (-h, -q).

use khbord::khovanov::knots::two_bridge;
use khbord::khovanov::{build_complex, mirror_complex, Ring};

fn main() {
    let d = two_bridge(&[3, 1, 1]).expect("5_2");
    let c = build_complex(&d, false, Ring::F2).expect("small diagram");
    let direct = build_complex(&d.mirror(), false, Ring::F2).expect("small diagram").homology();
    let dual = mirror_complex(&c).homology();
    let flipped = c.homology().regrade(|g| khbord::algebra::Grading::new(-g.h, -g.q));
    println!("5_2:        {:?}", c.homology().dims.iter().map(|(g, n)| (g.h, g.q, *n)).collect::<Vec<_>>());
    println!("mirror 5_2: {:?}", direct.dims.iter().map(|(g, n)| (g.h, g.q, *n)).collect::<Vec<_>>());
    println!("dual complex agrees: {}", dual == direct);
    println!("regraded table agrees: {}", flipped == direct);
}
