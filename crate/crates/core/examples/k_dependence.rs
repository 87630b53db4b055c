//! k-dependence checks and the minimal gap search.
//!
//! cargo run --release --example k_dependence

use insertion_kit::dependence::{check_k_dependence, min_k_search, triangle_necessity};
use insertion_kit::rational::int;
use insertion_kit::WeightedGraph;

fn main() -> insertion_kit::Result<()> {
    let cases = [
        ("K3", WeightedGraph::complete(3, int(1))?),
        ("K4", WeightedGraph::complete(4, int(1))?),
        ("K222", WeightedGraph::multipartite(3, 2, int(1))?),
        ("K5", WeightedGraph::complete(5, int(1))?),
    ];
    for (name, g) in &cases {
        let r = min_k_search(g, 3, 2, 2)?;
        match r.min_k {
            Some(k) => println!("{name}: dependent at gap {k}"),
            None => println!("{name}: no gap up to {} works", r.max_k),
        }
        for a in &r.attempts {
            if let Some(ce) = &a.counterexample {
                println!("  k={} fails: x={} y={} lhs {} vs {}", a.k, ce.x, ce.y, ce.lhs, ce.expected);
            }
        }
    }

    let k3 = &cases[0].1;
    let r = check_k_dependence(k3, 2, 3, 3)?;
    for c in r.constants.iter().take(4) {
        println!("K3 k=2 C_{{{},{}}} = {}", c.n, c.m, c.value);
    }

    let cycle = WeightedGraph::cycle(5)?;
    let cert = triangle_necessity(&cycle);
    println!("C5: {:?}, {}", cert.verdict, cert.reason);
    Ok(())
}
