//! Exact marginals `P_n(x) = B(x) / Z_n`, the two samplers, and empirical
//! checks on sampled batches.
//!
//! Randomness comes from ChaCha8 seeded with `seed_from_u64`, so a seed fixes
//! a batch bit-for-bit on every platform. Probabilities stay rational until
//! the final draw, which compares a 64-bit uniform integer `r` against
//! `ceil(F_i * 2^64)` for the cumulative table `F`; the discretization bias
//! per outcome is at most `2^-64`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::buildings::BuildingCounter;
use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedGraph};
use crate::rational::{self, Rational};
use crate::word::{BuildOrder, Word};

/// Largest `|V|^n` accepted by [`marginal`].
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Marginal {
    pub length: usize,
    /// Positive-probability words only.
    pub table: BTreeMap<Word, Rational>,
    pub normalizer: Rational,
}

impl Marginal {
    pub fn probability(&self, x: &Word) -> Rational {
        self.table.get(x).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support_len(&self) -> usize {
        self.table.len()
    }

    /// Law of the symbol at 0-based position `i`.
    pub fn single(&self, i: usize) -> BTreeMap<VertexId, Rational> {
        let mut out = BTreeMap::new();
        for (x, p) in &self.table {
            *out.entry(x.symbols()[i]).or_insert_with(Rational::zero) += p;
        }
        out
    }

    /// Joint law of the symbols at 0-based positions `i` and `j`.
    pub fn pair(&self, i: usize, j: usize) -> BTreeMap<(VertexId, VertexId), Rational> {
        let mut out = BTreeMap::new();
        for (x, p) in &self.table {
            let s = x.symbols();
            *out.entry((s[i], s[j])).or_insert_with(Rational::zero) += p;
        }
        out
    }
}

/// Total-variation distance between the joint law of positions `i`, `j` and
/// the product of the single-symbol laws at those positions.
pub fn pair_independence_gap(m: &Marginal, i: usize, j: usize) -> Rational {
    let joint = m.pair(i, j);
    let pi = m.single(i);
    let pj = m.single(j);
    let mut gap = Rational::zero();
    for (a, pa) in &pi {
        for (b, pb) in &pj {
            let pab = joint.get(&(*a, *b)).cloned().unwrap_or_else(Rational::zero);
            gap += (pab - pa * pb).abs();
        }
    }
    gap / rational::int(2)
}

#[derive(Serialize, Deserialize)]
struct MarginalEntry {
    word: Word,
    #[serde(with = "crate::rational::serde_str")]
    p: Rational,
}

impl Serialize for Marginal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            length: usize,
            #[serde(with = "crate::rational::serde_str")]
            normalizer: &'a Rational,
            table: Vec<MarginalEntry>,
        }
        let table = self.table.iter().map(|(w, p)| MarginalEntry { word: w.clone(), p: p.clone() }).collect();
        Out { length: self.length, normalizer: &self.normalizer, table }.serialize(s)
    }
}

fn check_enumeration_bound(g: &WeightedGraph, n: usize) -> Result<()> {
    let q = g.vertex_count() as u128;
    let count = (0..n).try_fold(1u128, |acc, _| acc.checked_mul(q)).unwrap_or(u128::MAX);
    if count > ENUMERATION_LIMIT {
        return Err(Error::EnumerationBound { count, limit: ENUMERATION_LIMIT });
    }
    Ok(())
}

/// `P_n` as an exact table.
pub fn marginal(g: &WeightedGraph, n: usize) -> Result<Marginal> {
    check_enumeration_bound(g, n)?;
    let mut counter = BuildingCounter::new(g);
    let mut weights = Vec::new();
    let mut total = Rational::zero();
    for x in g.positive_words(n) {
        let b = counter.b_via_tilde(x.symbols());
        if b.is_zero() {
            continue;
        }
        total += &b;
        weights.push((x, b));
    }
    if total.is_zero() {
        return Err(Error::Precondition(format!("no word of length {n} has positive building count")));
    }
    let table = weights.into_iter().map(|(x, b)| (x, b / &total)).collect();
    Ok(Marginal { length: n, table, normalizer: total })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StationarityReport {
    pub n: usize,
    pub consistent: bool,
    /// Largest `|P_n(x) - sum_v P_{n+1}(xv)|` or `|P_n(x) - sum_v P_{n+1}(vx)|`.
    #[serde(with = "crate::rational::serde_str")]
    pub max_defect: Rational,
}

/// Exact comparison of `P_n` with both one-symbol marginalizations of `P_{n+1}`.
pub fn stationarity_check(g: &WeightedGraph, n: usize) -> Result<StationarityReport> {
    let pn = marginal(g, n)?;
    let pn1 = marginal(g, n + 1)?;
    let mut right: HashMap<Word, Rational> = HashMap::new();
    let mut left: HashMap<Word, Rational> = HashMap::new();
    for (x, p) in &pn1.table {
        let s = x.symbols();
        *right.entry(Word::new(s[..n].to_vec())).or_insert_with(Rational::zero) += p;
        *left.entry(Word::new(s[1..].to_vec())).or_insert_with(Rational::zero) += p;
    }
    let mut keys: Vec<&Word> = pn.table.keys().chain(right.keys()).chain(left.keys()).collect();
    keys.sort();
    keys.dedup();
    let zero = Rational::zero();
    let mut max_defect = Rational::zero();
    for x in keys {
        let p = pn.table.get(x).unwrap_or(&zero);
        for side in [&right, &left] {
            let d = (p - side.get(x).unwrap_or(&zero)).abs();
            if d > max_defect {
                max_defect = d;
            }
        }
    }
    Ok(StationarityReport { n, consistent: max_defect.is_zero(), max_defect })
}

/// Picks index `i` with probability `weights[i] / sum(weights)` from one
/// 64-bit draw; `None` when every weight is zero.
pub fn pick_weighted(weights: &[Rational], rng: &mut impl RngCore) -> Option<usize> {
    let total: Rational = weights.iter().sum();
    if !total.is_positive() {
        return None;
    }
    let thresholds = thresholds(weights.iter().map(|w| w / &total));
    Some(draw(&thresholds, rng))
}

fn thresholds(probs: impl Iterator<Item = Rational>) -> Vec<u128> {
    let scale = Rational::from_integer(BigInt::one() << 64);
    let mut cum = Rational::zero();
    probs
        .map(|p| {
            cum += p;
            (&cum * &scale).ceil().to_integer().to_u128().expect("cumulative probability at most 1")
        })
        .collect()
}

fn draw(thresholds: &[u128], rng: &mut impl RngCore) -> usize {
    let r = rng.next_u64() as u128;
    let i = thresholds.partition_point(|&t| t <= r);
    // zero-probability entries share a threshold with their predecessor, so
    // partition_point lands on the first entry with positive mass above r
    i.min(thresholds.len() - 1)
}

/// Inverse-transform sampler over an exact marginal.
#[derive(Debug, Clone)]
pub struct ExactSampler {
    words: Vec<Word>,
    thresholds: Vec<u128>,
}

impl ExactSampler {
    pub fn new(m: &Marginal) -> Self {
        let words: Vec<Word> = m.table.keys().cloned().collect();
        let thresholds = thresholds(m.table.values().cloned());
        ExactSampler { words, thresholds }
    }

    pub fn sample(&self, rng: &mut impl RngCore) -> &Word {
        &self.words[draw(&self.thresholds, rng)]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleBatch {
    pub seed: u64,
    pub length: usize,
    pub words: Vec<Word>,
}

impl SampleBatch {
    /// One JSON integer array per line.
    pub fn to_ndjson(&self) -> String {
        let mut out = String::new();
        for w in &self.words {
            out.push_str(&serde_json::to_string(w).expect("word serializes"));
            out.push('\n');
        }
        out
    }
}

/// `count` independent draws from `P_n`.
pub fn sample_exact(g: &WeightedGraph, n: usize, seed: u64, count: usize) -> Result<SampleBatch> {
    let m = marginal(g, n)?;
    Ok(sample_from_marginal(&m, seed, count))
}

pub fn sample_from_marginal(m: &Marginal, seed: u64, count: usize) -> SampleBatch {
    let sampler = ExactSampler::new(m);
    let mut rng = rng_from_seed(seed);
    let words = (0..count).map(|_| sampler.sample(&mut rng).clone()).collect();
    SampleBatch { seed, length: m.length, words }
}

/// Weight of inserting `v` at gap `j` (0 = front, `len` = back) of `x`:
/// one edge factor at an end, two in the interior, 1 into the empty word.
pub fn insertion_weight(g: &WeightedGraph, x: &[VertexId], j: usize, v: VertexId) -> Rational {
    let mut w = Rational::one();
    if j > 0 {
        w *= g.weight(x[j - 1], v);
    }
    if j < x.len() {
        w *= g.weight(v, x[j]);
    }
    w
}

/// Sum of insertion weights over every `(location, vertex)` pair.
pub fn step_normalizer(g: &WeightedGraph, x: &[VertexId]) -> Rational {
    (0..=x.len()).flat_map(|j| g.vertices().map(move |v| (j, v))).map(|(j, v)| insertion_weight(g, x, j, v)).sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InsertionSample {
    pub word: Word,
    /// `order.position_at(t)` is the final position of the symbol inserted at step `t`.
    pub order: BuildOrder,
}

/// Grows a word from empty to length `n`, choosing each `(location, vertex)`
/// with probability proportional to the weight the insertion incurs.
pub fn sample_insertion(g: &WeightedGraph, n: usize, seed: u64) -> Result<InsertionSample> {
    let mut rng = rng_from_seed(seed);
    sample_insertion_with(g, n, &mut rng)
}

pub fn sample_insertion_with(g: &WeightedGraph, n: usize, rng: &mut impl RngCore) -> Result<InsertionSample> {
    let mut word: Vec<VertexId> = Vec::with_capacity(n);
    let mut arrival: Vec<usize> = Vec::with_capacity(n);
    let q = g.vertex_count();
    for step in 0..n {
        let choices: Vec<Rational> =
            (0..=word.len()).flat_map(|j| g.vertices().map(move |v| (j, v))).map(|(j, v)| insertion_weight(g, &word, j, v)).collect();
        let pick = pick_weighted(&choices, rng).ok_or(Error::DeadEnd { length: step })?;
        let (j, v) = (pick / q, VertexId::new(pick % q));
        word.insert(j, v);
        arrival.insert(j, step + 1);
    }
    let mut order = vec![0; n];
    for (pos, &t) in arrival.iter().enumerate() {
        order[t - 1] = pos + 1;
    }
    Ok(InsertionSample { word: Word::new(word), order: BuildOrder::new(order)? })
}

/// Exact law of [`sample_insertion`] at length `n`, by propagating
/// probabilities over intermediate words.
pub fn insertion_law(g: &WeightedGraph, n: usize) -> Result<BTreeMap<Word, Rational>> {
    let mut dist: BTreeMap<Word, Rational> = BTreeMap::from([(Word::empty(), Rational::one())]);
    for step in 0..n {
        let mut next: BTreeMap<Word, Rational> = BTreeMap::new();
        for (x, p) in &dist {
            let xs = x.symbols();
            let z = step_normalizer(g, xs);
            if z.is_zero() {
                return Err(Error::DeadEnd { length: step });
            }
            for j in 0..=xs.len() {
                for v in g.vertices() {
                    let w = insertion_weight(g, xs, j, v);
                    if w.is_zero() {
                        continue;
                    }
                    let mut y = xs.to_vec();
                    y.insert(j, v);
                    *next.entry(Word::new(y)).or_insert_with(Rational::zero) += p * w / &z;
                }
            }
        }
        dist = next;
    }
    Ok(dist)
}

/// `(1/2) sum |a - b|` over the union of supports.
pub fn total_variation(a: &BTreeMap<Word, Rational>, b: &BTreeMap<Word, Rational>) -> Rational {
    let zero = Rational::zero();
    let mut keys: Vec<&Word> = a.keys().chain(b.keys()).collect();
    keys.sort();
    keys.dedup();
    let sum: Rational = keys.into_iter().map(|k| (a.get(k).unwrap_or(&zero) - b.get(k).unwrap_or(&zero)).abs()).sum();
    sum / rational::int(2)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiSquareReport {
    pub gap: usize,
    pub samples: usize,
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
}

impl ChiSquareReport {
    pub fn rejects(&self, alpha: f64) -> bool {
        self.p_value < alpha
    }
}

/// Pearson goodness-of-fit of the observed pairs `(X_1, X_{gap+2})` against
/// `P_1 x P_1`. Pairs in a cell of expected count zero force rejection.
pub fn empirical_gap_independence(batch: &SampleBatch, gap: usize, p1: &Marginal) -> Result<ChiSquareReport> {
    if batch.length < gap + 2 {
        return Err(Error::InvalidArgument(format!("words of length {} are too short for gap {gap}", batch.length)));
    }
    if p1.length != 1 {
        return Err(Error::InvalidArgument("expected a single-symbol marginal".into()));
    }
    let mut observed: HashMap<(VertexId, VertexId), u64> = HashMap::new();
    for w in &batch.words {
        let s = w.symbols();
        *observed.entry((s[0], s[gap + 1])).or_default() += 1;
    }
    let n = batch.words.len() as f64;
    let singles: Vec<(VertexId, f64)> = p1.table.iter().map(|(w, p)| (w.symbols()[0], rational::to_f64(p))).collect();
    let mut statistic = 0.0;
    let mut cells = 0usize;
    for &(a, pa) in &singles {
        for &(b, pb) in &singles {
            let e = n * pa * pb;
            let o = *observed.get(&(a, b)).unwrap_or(&0) as f64;
            statistic += (o - e) * (o - e) / e;
            cells += 1;
        }
    }
    let stray = observed.iter().any(|((a, b), _)| !singles.iter().any(|s| s.0 == *a) || !singles.iter().any(|s| s.0 == *b));
    let dof = cells.saturating_sub(1).max(1);
    let p_value = if stray {
        statistic = f64::INFINITY;
        0.0
    } else {
        let dist = ChiSquared::new(dof as f64).expect("positive degrees of freedom");
        dist.sf(statistic)
    };
    Ok(ChiSquareReport { gap, samples: batch.words.len(), statistic, degrees_of_freedom: dof, p_value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn k(q: usize) -> WeightedGraph {
        WeightedGraph::complete(q, int(1)).unwrap()
    }

    fn w(ix: &[usize]) -> Word {
        Word::from_indices(ix.iter().copied())
    }

    #[test]
    fn small_marginals() {
        let m1 = marginal(&k(3), 1).unwrap();
        assert!(m1.table.values().all(|p| *p == ratio(1, 3)));
        let m2 = marginal(&k(3), 2).unwrap();
        assert_eq!(m2.support_len(), 6);
        assert!(m2.table.values().all(|p| *p == ratio(1, 6)));
        // six words aba with B = 4 and six abc with B = 6: Z_3 = 60
        let m3 = marginal(&k(3), 3).unwrap();
        assert_eq!(m3.normalizer, int(60));
        assert_eq!(m3.probability(&w(&[0, 1, 0])), ratio(1, 15));
        assert_eq!(m3.probability(&w(&[0, 1, 2])), ratio(1, 10));
        assert_eq!(m3.table.values().sum::<Rational>(), int(1));
    }

    #[test]
    fn enumeration_bound() {
        assert!(matches!(marginal(&k(10), 8), Err(Error::EnumerationBound { .. })));
    }

    #[test]
    fn stationarity() {
        let r = stationarity_check(&k(4), 3).unwrap();
        assert!(r.consistent);
        assert!(r.max_defect.is_zero());
        let r = stationarity_check(&WeightedGraph::complete(3, int(2)).unwrap(), 3).unwrap();
        assert!(!r.consistent);
        assert!(r.max_defect.is_positive());
        assert!(stationarity_check(&k(2), 4).unwrap().consistent);
    }

    #[test]
    fn seeded_batches_repeat() {
        let a = sample_exact(&k(3), 4, 7, 200).unwrap();
        let b = sample_exact(&k(3), 4, 7, 200).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, sample_exact(&k(3), 4, 8, 200).unwrap());
        assert!(sample_exact(&k(3), 4, 7, 0).unwrap().words.is_empty());
        for x in &a.words {
            assert!(x.symbols().windows(2).all(|p| p[0] != p[1]));
        }
    }

    #[test]
    fn weighted_pick_respects_zeros() {
        let mut rng = rng_from_seed(1);
        let weights = [int(0), int(1), int(0), int(3), int(0)];
        let mut hits = [0usize; 5];
        for _ in 0..4000 {
            hits[pick_weighted(&weights, &mut rng).unwrap()] += 1;
        }
        assert_eq!((hits[0], hits[2], hits[4]), (0, 0, 0));
        assert!(hits[3] > 2 * hits[1]);
        assert_eq!(pick_weighted(&[int(0)], &mut rng), None);
    }

    #[test]
    fn complete_graph_step_normalizer() {
        // 2(q-1) + (i-1)(q-2) for a word of length i >= 1
        for q in 2..=6 {
            let g = k(q);
            for i in 1..=8 {
                for x in g.positive_words(i).into_iter().take(40) {
                    let expected = (2 * (q - 1) + (i - 1) * (q - 2)) as i64;
                    assert_eq!(step_normalizer(&g, x.symbols()), int(expected), "q={q} i={i}");
                }
            }
            assert_eq!(step_normalizer(&g, &[]), int(q as i64));
        }
    }

    #[test]
    fn insertion_trace_is_consistent() {
        let g = k(4);
        for seed in 0..20 {
            let s = sample_insertion(&g, 6, seed).unwrap();
            assert_eq!(s.word.len(), 6);
            assert!(crate::buildings::building_weight(&g, &s.word, &s.order).unwrap().is_positive());
        }
        let one = insertion_law(&g, 1).unwrap();
        assert!(one.values().all(|p| *p == ratio(1, 4)));
    }

    #[test]
    fn insertion_dead_end() {
        let g = WeightedGraph::empty(2).unwrap();
        assert!(matches!(sample_insertion(&g, 2, 0), Err(Error::DeadEnd { length: 1 })));
    }

    #[test]
    fn insertion_law_matches_marginal_on_k3() {
        for n in 1..=5 {
            let law = insertion_law(&k(3), n).unwrap();
            let m = marginal(&k(3), n).unwrap();
            assert!(total_variation(&law, &m.table).is_zero(), "n = {n}");
        }
    }

    #[test]
    fn gap_independence_rejects_adjacent_pairs() {
        let g = k(4);
        let batch = sample_exact(&g, 3, 0, 5000).unwrap();
        let p1 = marginal(&g, 1).unwrap();
        let r = empirical_gap_independence(&batch, 0, &p1).unwrap();
        assert!(r.rejects(0.001));
        assert!(empirical_gap_independence(&batch, 2, &p1).is_err());
    }
}
