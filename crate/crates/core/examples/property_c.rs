//! Consistency of the marginal family: constants, a failing weight and T-invariance.
//!
//! cargo run --example property_c

use insertion_kit::consistency::{check_property_c, check_t_invariance, unif_defect, unif_defect_closed_form};
use insertion_kit::rational::int;
use insertion_kit::WeightedGraph;

fn main() -> insertion_kit::Result<()> {
    for q in 3..=5 {
        let g = WeightedGraph::complete(q, int(1))?;
        let r = check_property_c(&g, 6)?;
        let cs: Vec<String> = r.constants.unwrap_or_default().iter().map(|c| c.to_string()).collect();
        println!("K{q}: C_n = {}; T-invariant to 6: {}", cs.join(", "), check_t_invariance(&g, 6)?.invariant);
    }

    let heavy = WeightedGraph::complete(3, int(2))?;
    let r = check_property_c(&heavy, 5)?;
    if let Some(ce) = r.counterexample {
        println!("2*K3 fails at n={} on {} (canonical {}), ratios {:?}", ce.n, ce.word, ce.canonical, ce.ratios.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    }
    for w in [1, 2, 3] {
        println!("uniform defect q=4 w={w}: {} (closed form {})", unif_defect(4, &int(w))?, unif_defect_closed_form(4, &int(w))?);
    }

    let kite = WeightedGraph::kite();
    println!("kite passes to 5: {}", check_property_c(&kite, 5)?.is_verified());
    Ok(())
}
