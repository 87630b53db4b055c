//! Uniform-weight structure: regularity, triangles per edge and the kite obstruction.
//!
//! cargo run --example uniform_weight

use insertion_kit::consistency::{check_property_c, kite_obstruction};
use insertion_kit::rational::int;
use insertion_kit::WeightedGraph;

fn main() -> insertion_kit::Result<()> {
    let graphs = [
        ("K4", WeightedGraph::complete(4, int(1))?),
        ("K22", WeightedGraph::multipartite(2, 2, int(1))?),
        ("C5", WeightedGraph::cycle(5)?),
        ("2*K3", WeightedGraph::complete(3, int(2))?),
    ];
    for (name, g) in &graphs {
        let uw = g.uniform_weight();
        let c = check_property_c(g, 4)?;
        let w = uw.w.map(|w| w.to_string()).unwrap_or("-".into());
        let d = g.regularity().map(|d| d.to_string()).unwrap_or("-".into());
        let t = g.triangles_per_edge()?.map(|t| t.to_string()).unwrap_or("-".into());
        let cs = c.constants.map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).unwrap_or("fails".into());
        println!("{name:5} w={w} d={d} t={t} C: {cs}");
    }

    let kite = WeightedGraph::kite();
    let found = kite.find_kite()?.expect("kite present");
    let ob = kite_obstruction(&kite, &found)?;
    println!("kite {found}: lhs {} rhs {} bracket {} certifies failure: {}", ob.lhs, ob.rhs, ob.bracket, ob.certifies_failure());
    Ok(())
}
