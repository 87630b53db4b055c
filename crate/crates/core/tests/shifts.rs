use insertion_kit::consistency::check_property_c;
use insertion_kit::graph::WeightedGraph;
use insertion_kit::process::marginal;
use insertion_kit::rational::{int, ratio};
use insertion_kit::sft::{all_loopless, check_lr, de_bruijn, not_finitely_dependent_certificate, projected_marginal, sample_sft, ShiftOfFiniteType};
use proptest::prelude::*;

fn full(q: usize, n: usize) -> ShiftOfFiniteType {
    let mut tuples = Vec::new();
    for m in 0..q.pow(n as u32) {
        let t: Vec<u32> = (0..n).map(|k| (m / q.pow(k as u32) % q) as u32).collect();
        if t.iter().any(|&c| c != t[0]) {
            tuples.push(t);
        }
    }
    ShiftOfFiniteType::new(q, n, tuples).unwrap()
}

/// de Bruijn graph of `s` as the induced subgraph of the full loopless shift's.
fn induced(s: &ShiftOfFiniteType) -> WeightedGraph {
    let f = full(s.q(), s.n());
    let big = de_bruijn(&f);
    let ix: Vec<usize> = s.tuples().iter().map(|t| f.index_of(t).unwrap()).collect();
    WeightedGraph::from_fn(ix.len(), |i, j| big.weight_ix(ix[i], ix[j]).clone()).unwrap()
}

#[test]
fn no_directed_triangles() {
    // every loopless de Bruijn graph is an induced subgraph of the full one,
    // so triangle-freeness of the full graph covers all 2^(q^n - q) - 1 shifts
    for q in 2..=3 {
        for n in 2..=3 {
            assert!(!de_bruijn(&full(q, n)).has_directed_triangle(), "q={q} n={n}");
        }
    }
    for s in all_loopless(2, 2).into_iter().chain(all_loopless(2, 3)).chain(all_loopless(3, 2)) {
        let g = de_bruijn(&s);
        assert_eq!(g, induced(&s));
        assert!(!g.has_directed_triangle());
        assert!(not_finitely_dependent_certificate(&s).issued);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn induced_structure_q3_n3(mask in 1u32..1 << 24) {
        let f = full(3, 3);
        let tuples: Vec<Vec<u32>> = f.tuples().into_iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, t)| t.clone()).collect();
        let s = ShiftOfFiniteType::new(3, 3, tuples).unwrap();
        prop_assert_eq!(de_bruijn(&s), induced(&s));
        prop_assert!(not_finitely_dependent_certificate(&s).issued);
    }
}

#[test]
fn lr_shifts_are_consistent_with_c_equal_2k() {
    let mut consistent = 0;
    for s in all_loopless(2, 2).into_iter().chain(all_loopless(3, 2)).chain(all_loopless(2, 3)) {
        let lr = check_lr(&s);
        let c = check_property_c(&de_bruijn(&s), 5).unwrap();
        assert_eq!(lr.is_constant, c.is_verified(), "{:?}", s.allowed());
        if let Some(k) = lr.k {
            consistent += 1;
            for n in 1..5 {
                assert_eq!(c.constant(n), Some(&int(2 * k as i64)));
            }
            let batch = sample_sft(&s, 6, 9, 200).unwrap();
            assert!(batch.words.iter().all(|x| x.len() == 6 + s.n() - 1 && s.contains(x)));
        }
    }
    assert!(consistent >= 3);
}

#[test]
fn alternating_parity_process() {
    let s = ShiftOfFiniteType::new(2, 2, [vec![0, 1], vec![1, 0]]).unwrap();
    for window in 1..=7 {
        let m = projected_marginal(&s, window).unwrap();
        let words: Vec<&Vec<u32>> = m.keys().collect();
        assert_eq!(words, [&vec![0, 1, 0, 1, 0, 1, 0, 1][..window + 1], &vec![1, 0, 1, 0, 1, 0, 1, 0][..window + 1]]);
        assert!(m.values().all(|p| *p == ratio(1, 2)));
        // the first symbol determines every later one: P(x_1 = 0, x_m = 0) is 1/2 or 0, never 1/4
        for x in m.keys() {
            assert_ne!(x[0], x[1]);
        }
    }
}

#[test]
fn window_one_matches_tuple_frequencies() {
    let s = ShiftOfFiniteType::proper_colorings(3).unwrap();
    let tuples = marginal(&de_bruijn(&s), 1).unwrap();
    let projected = projected_marginal(&s, 1).unwrap();
    assert_eq!(projected.len(), tuples.support_len());
    for (x, p) in &tuples.table {
        let t = s.tuples()[x.symbols()[0].index()];
        assert_eq!(projected.get(t), Some(p));
    }
}
