//! Replays every check on the shipped bordered data.

use khbord::paperdata::{default_max_arity, run_all, Catalog};

fn main() {
    let cat = Catalog::builtin();
    let reports = run_all(&cat, default_max_arity()).expect("default arity is valid");
    for r in &reports {
        println!("{r}");
    }
    if reports.iter().any(|r| !r.passed()) {
        std::process::exit(1);
    }
}
