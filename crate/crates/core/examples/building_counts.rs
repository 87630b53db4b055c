//! Building counts three ways on K4 and the kite.
//!
//! cargo run --example building_counts

use insertion_kit::buildings::{b_bruteforce, b_rec, b_tilde, building_weight, constraint_graph, word_weight};
use insertion_kit::rational::int;
use insertion_kit::{BuildOrder, WeightedGraph, Word};

fn main() -> insertion_kit::Result<()> {
    let k4 = WeightedGraph::complete(4, int(1))?;
    let x = Word::from_indices([0, 1, 0, 2]);
    // every order of arrival, then the deletion recurrence, then w(x) * B~(x)
    let brute = b_bruteforce(&k4, &x)?;
    let rec = b_rec(&k4, &x)?;
    let factored = word_weight(&k4, &x) * b_tilde(&k4, &x)?;
    println!("K4  B({x}) = {brute} = {rec} = {factored}");

    let sigma = BuildOrder::from_digits("4752613")?;
    let y = Word::from_indices([0, 1, 2, 0, 1, 2, 0]);
    let k3 = WeightedGraph::complete(3, int(1))?;
    let cg = constraint_graph(&k3, &y, &sigma)?;
    println!("K3  order {:?} on {y}: {} constraint edges, weight {}", sigma.as_slice(), cg.len(), building_weight(&k3, &y, &sigma)?);

    let kite = WeightedGraph::kite();
    for ix in [[0, 1, 2], [0, 3, 1], [3, 0, 3]] {
        let w = Word::from_indices(ix);
        println!("kite B({w}) = {}", b_rec(&kite, &w)?);
    }
    Ok(())
}
