//! Spectral sequence of a small hand-built filtered complex.

use khbord::algebra::{BasedModule, GradedComplex, Grading, SparseMap};
use khbord::specseq::{pages, FilteredComplex};

fn main() {
    // a -> b of length 1, c -> d of length 2, e survives.
    let module = BasedModule::new((0..5).map(|i| Grading::new(i % 2, 0)).collect());
    let d = SparseMap::from_entries(5, 5, &[(0, 1), (2, 3)]).expect("in range");
    let fc = FilteredComplex::new(GradedComplex::new(module, d).expect("d² = 0"), vec![0, 1, 0, 2, 0]).expect("filtered");
    let ss = pages(&fc);
    for p in &ss.pages {
        println!("E_{}: dim {}, rank d_{} = {}", p.r, p.total(), p.r, p.d_rank);
    }
    println!("collapses at E_{}", ss.collapse_page);
}
