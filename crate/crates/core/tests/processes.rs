use insertion_kit::buildings::word_weight;
use insertion_kit::process::{
    empirical_gap_independence, insertion_law, marginal, pair_independence_gap, sample_exact, sample_insertion, stationarity_check,
    total_variation,
};
use insertion_kit::rational::{int, ratio};
use insertion_kit::WeightedGraph;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

const ALPHA: f64 = 0.001;

fn k(q: usize) -> WeightedGraph {
    WeightedGraph::complete(q, int(1)).unwrap()
}

#[test]
fn support_is_positive_walks() {
    for g in [k(3), k(4), WeightedGraph::multipartite(2, 2, int(1)).unwrap(), WeightedGraph::kite(), WeightedGraph::cycle(5).unwrap()] {
        for n in 1..=5 {
            let m = marginal(&g, n).unwrap();
            assert_eq!(m.table.values().sum::<insertion_kit::Rational>(), insertion_kit::Rational::one());
            for x in m.table.keys() {
                assert!(word_weight(&g, x).is_positive());
            }
            assert_eq!(m.support_len() as u128, g.count_positive_words(n));
        }
    }
}

#[test]
fn stationarity_matches_consistency() {
    for g in [k(3), k(5), WeightedGraph::multipartite(3, 2, int(1)).unwrap(), WeightedGraph::cycle(5).unwrap()] {
        for n in 1..=4 {
            assert!(stationarity_check(&g, n).unwrap().consistent);
        }
    }
    assert!(!stationarity_check(&WeightedGraph::kite(), 3).unwrap().consistent);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn seeds_reproduce_batches(seed in any::<u64>(), q in 3usize..=5, n in 1usize..=5) {
        let a = sample_exact(&k(q), n, seed, 64).unwrap();
        let b = sample_exact(&k(q), n, seed, 64).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.words.iter().all(|x| x.symbols().windows(2).all(|p| p[0] != p[1])));
        prop_assert_eq!(sample_insertion(&k(q), n, seed).unwrap(), sample_insertion(&k(q), n, seed).unwrap());
    }
}

#[test]
fn gap_statistics_follow_exact_dependence() {
    // K4 is 1-dependent: X1 and X3 are independent, X1 and X2 are not
    let g = k(4);
    let p1 = marginal(&g, 1).unwrap();
    let batch = sample_exact(&g, 3, 11, 20_000).unwrap();
    assert!(!empirical_gap_independence(&batch, 1, &p1).unwrap().rejects(ALPHA));
    assert!(empirical_gap_independence(&batch, 0, &p1).unwrap().rejects(ALPHA));
    // K3 at gap 1 is dependent with total-variation gap 1/15
    let g = k(3);
    assert!(pair_independence_gap(&marginal(&g, 3).unwrap(), 0, 2).is_positive());
    let batch = sample_exact(&g, 3, 11, 20_000).unwrap();
    assert!(empirical_gap_independence(&batch, 1, &marginal(&g, 1).unwrap()).unwrap().rejects(ALPHA));
}

#[test]
fn insertion_law_on_multipartite() {
    for g in [k(4), WeightedGraph::multipartite(2, 2, int(1)).unwrap(), WeightedGraph::multipartite(4, 2, int(1)).unwrap()] {
        for n in 1..=4 {
            let tv = total_variation(&insertion_law(&g, n).unwrap(), &marginal(&g, n).unwrap().table);
            assert!(tv.is_zero());
        }
    }
}

#[test]
fn insertion_law_differs_on_paths() {
    // paths have a word-dependent step normalizer
    for (q, n, gap) in [(3, 3, ratio(0, 1)), (4, 4, ratio(1, 8)), (5, 4, ratio(1, 6))] {
        let g = WeightedGraph::path(q).unwrap();
        let tv = total_variation(&insertion_law(&g, n).unwrap(), &marginal(&g, n).unwrap().table);
        assert_eq!(tv, gap, "path {q} length {n}");
    }
}

#[test]
fn ndjson_lines() {
    let batch = sample_exact(&k(3), 4, 2, 5).unwrap();
    let text = batch.to_ndjson();
    let parsed: Vec<Vec<u32>> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(parsed.len(), 5);
    assert!(parsed.iter().all(|w| w.len() == 4));
}
