//! Seeded sampling: exact marginal draws, the insertion process and a chi-square gap test.
//!
//! cargo run --release --example sampling

use insertion_kit::process::{empirical_gap_independence, insertion_law, marginal, sample_exact, sample_insertion, total_variation};
use insertion_kit::rational::int;
use insertion_kit::WeightedGraph;

fn main() -> insertion_kit::Result<()> {
    let k3 = WeightedGraph::complete(3, int(1))?;
    let batch = sample_exact(&k3, 5, 7, 20_000)?;
    print!("{}", sample_exact(&k3, 5, 7, 3)?.to_ndjson());

    let p1 = marginal(&k3, 1)?;
    for gap in 1..=2 {
        let r = empirical_gap_independence(&batch, gap, &p1)?;
        println!("gap {gap}: chi2 {:.2} df {} p {:.4} rejects at 0.001: {}", r.statistic, r.degrees_of_freedom, r.p_value, r.rejects(0.001));
    }

    let s = sample_insertion(&k3, 6, 11)?;
    println!("insertion: {} built in order {:?}", s.word, s.order.as_slice());
    for n in 2..=4 {
        let tv = total_variation(&insertion_law(&k3, n)?, &marginal(&k3, n)?.table);
        println!("K3 n={n}: insertion law vs marginal TV {tv}");
    }
    Ok(())
}
