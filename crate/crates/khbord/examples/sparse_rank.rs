//! Rank over F2 and homology by Gaussian cancellation.

use khbord::algebra::{f2_rank, ChainComplex, SparseMap};

fn main() {
    let merge = SparseMap::from_entries(4, 2, &[(0, 0), (1, 1), (2, 1)]).expect("in range");
    println!("merge V⊗V → V has rank {}", f2_rank(&merge));

    // A hexagon as a cell complex: six vertices, six edges.
    let names: Vec<String> = (0..6).map(|i| format!("v{i}")).chain((0..6).map(|i| format!("e{i}"))).collect();
    let entries: Vec<(usize, usize)> = (0..6).flat_map(|i| [(6 + i, i), (6 + i, (i + 1) % 6)]).collect();
    let c = ChainComplex::new(names, SparseMap::from_entries(12, 12, &entries).expect("in range")).expect("d² = 0");
    println!("hexagon: 12 cells, homology dim {}", c.homology_dim());
}
