//! The composite G′ evaluated stage by stage for both exteriors.

use khbord::paperdata::gprime::{evaluate, GPrime};
use khbord::paperdata::Catalog;

fn main() {
    let cat = Catalog::builtin();
    for (case, data) in &cat.gprime().cases {
        let gp = GPrime::build(&cat, case).expect("shipped data");
        println!("case {case}: η maps {} generators into {}", gp.eta.source.len(), gp.eta.target.len());
        for ev in &data.evaluations {
            let stages = evaluate(&gp, &ev.input, &ev.stages).expect("printed names resolve");
            println!("  {}", ev.input);
            for (k, s) in stages.iter().enumerate() {
                let terms: Vec<&String> = s.computed.iter().collect();
                println!("    stage {}: {:?}  extras {:?}", k + 1, terms, s.extras);
            }
        }
        println!("  G′ is a chain map: {}", gp.composite().expect("composable").is_chain_map());
    }
}
