//! Pages of the Bar-Natan-Lee spectral sequence of a torus knot.
//!
//! `cargo run --release --example bar_natan_lee_pages -- 3 7` runs T(3,7).

use khbord::khovanov::knots::torus_knot;
use khbord::specseq::bn_lee_ss;

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (p, q) = match args[..] {
        [p, q] => (p, q),
        _ => (3, 5),
    };
    let d = torus_knot(p, q).expect("torus knot");
    let ss = bn_lee_ss(&d, true).expect("within the crossing limit");
    println!("T({p},{q}), {} crossings, reduced", d.len());
    for page in &ss.pages {
        println!(
            "E_{}: dim {:>3}, rank d_{} = {}, free {}, torsion {}",
            page.r,
            page.total(),
            page.r,
            page.d_rank,
            page.free_rank().unwrap_or(0),
            page.torsion_rank().unwrap_or(0)
        );
    }
    println!("collapses at E_{}", ss.collapse_page);
}
