//! Desk-scale classification of small unit-weight graphs.
//!
//! cargo run --release --example classify

use insertion_kit::consistency::check_property_c;
use insertion_kit::dependence::min_k_search;
use insertion_kit::rational::int;
use insertion_kit::WeightedGraph;

fn main() -> insertion_kit::Result<()> {
    let mut graphs = vec![("kite".to_string(), WeightedGraph::kite()), ("P4".into(), WeightedGraph::path(4)?), ("C5".into(), WeightedGraph::cycle(5)?)];
    for q in 2..=5 {
        graphs.push((format!("K{q}"), WeightedGraph::complete(q, int(1))?));
    }
    for q in 2..=3 {
        graphs.push((format!("K{q}x2"), WeightedGraph::multipartite(q, 2, int(1))?));
    }
    for (name, g) in &graphs {
        let c = check_property_c(g, 4)?;
        let verdict = if !c.is_verified() {
            format!("(C) fails at n={}", c.counterexample.map_or(0, |ce| ce.n))
        } else {
            match min_k_search(g, 2, 2, 2)?.min_k {
                Some(k) => format!("consistent, {k}-dependent on windows 2x2"),
                None => "consistent, not k-dependent for k <= 2".into(),
            }
        };
        let kind = g.classify_multipartite()?;
        println!("{name:6} multipartite q={:?} r={:?}: {verdict}", kind.q, kind.r);
    }
    Ok(())
}
