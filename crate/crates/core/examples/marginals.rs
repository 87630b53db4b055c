//! Exact marginals, stationarity and pair dependence.
//!
//! cargo run --example marginals

use insertion_kit::process::{marginal, pair_independence_gap, stationarity_check};
use insertion_kit::rational::int;
use insertion_kit::WeightedGraph;

fn main() -> insertion_kit::Result<()> {
    let k3 = WeightedGraph::complete(3, int(1))?;
    let m = marginal(&k3, 3)?;
    println!("K3 length 3: {} words, normalizer {}", m.support_len(), m.normalizer);
    for (x, p) in m.table.iter().take(4) {
        println!("  P({x}) = {p}");
    }
    for (n, i, j) in [(3, 0, 2), (4, 0, 3), (4, 0, 2)] {
        let m = marginal(&k3, n)?;
        println!("K3 n={n} positions {},{}: TV from product {}", i + 1, j + 1, pair_independence_gap(&m, i, j));
    }
    for (name, g) in [("K3", k3.clone()), ("kite", WeightedGraph::kite())] {
        let s = stationarity_check(&g, 3)?;
        println!("{name} stationary at 3: {} (max defect {})", s.consistent, s.max_defect);
    }
    Ok(())
}
