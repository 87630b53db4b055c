//! Word weights, building weights, constraint graphs and the building counts
//! `B` and `B~`.
//!
//! Three routes to `B` exist and are kept independent of one another:
//! [`b_bruteforce`] sums building weights over every permutation, the
//! deletion recurrence in [`BuildingCounter::b`] removes the last arrival, and
//! `w(x) * B~(x)` uses the reduced recurrence in [`BuildingCounter::b_tilde`].
//!
//! In both recurrences a missing neighbor (deleting the first or last symbol)
//! contributes a factor of 1. The counter works over integers scaled by a
//! power of the common weight denominator and divides once at the end.
//!
//! [`BuildingExpansion`] is the permutation sum enumerated once per length and
//! regrouped into monomials over position pairs, so the brute-force oracle can
//! be evaluated on millions of words; [`oracle_sweep`] compares it against both
//! recurrences on every word up to a given length.

use std::collections::HashMap;

use num_traits::{One, ToPrimitive, Zero};
use num_bigint::BigInt;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedGraph};
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::word::{for_each_permutation, BuildOrder, Word};

/// Largest word length [`b_bruteforce`] accepts by default (8! = 40320 orders).
pub const DEFAULT_PERMUTATION_BOUND: usize = 8;

/// `w(x_1,x_2) ... w(x_{n-1},x_n)`; 1 for words of length at most 1.
pub fn word_weight(g: &WeightedGraph, x: &Word) -> Rational {
    symbols_weight(g, x.symbols())
}

pub(crate) fn symbols_weight(g: &WeightedGraph, xs: &[VertexId]) -> Rational {
    let mut acc = Rational::one();
    for pair in xs.windows(2) {
        let w = g.weight(pair[0], pair[1]);
        if w.is_zero() {
            return Rational::zero();
        }
        if !w.is_one() {
            acc *= w;
        }
    }
    acc
}

pub(crate) fn is_positive_walk(g: &WeightedGraph, xs: &[VertexId]) -> bool {
    xs.windows(2).all(|p| g.is_edge(p[0], p[1]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintEdge {
    pub tail: VertexId,
    pub head: VertexId,
    /// Arrival time (1-based) at which the edge was appended.
    pub time: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub weight: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConstraintGraph {
    pub edges: Vec<ConstraintEdge>,
}

impl ConstraintGraph {
    pub fn weight(&self) -> Rational {
        self.edges.iter().fold(Rational::one(), |acc, e| acc * &e.weight)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// When position `sigma(t)` arrives it is joined to its nearest present
/// neighbor on each side: `(x_l, x_sigma(t))` and `(x_sigma(t), x_r)`.
pub fn constraint_graph(g: &WeightedGraph, x: &Word, sigma: &BuildOrder) -> Result<ConstraintGraph> {
    g.check_word(x)?;
    if x.len() != sigma.len() {
        return Err(Error::LengthMismatch { word: x.len(), order: sigma.len() });
    }
    let n = x.len();
    let xs = x.symbols();
    let mut present = vec![false; n + 1];
    let mut edges = Vec::new();
    for t in 1..=n {
        let p = sigma.position_at(t);
        if let Some(l) = (1..p).rev().find(|&s| present[s]) {
            let (tail, head) = (xs[l - 1], xs[p - 1]);
            edges.push(ConstraintEdge { tail, head, time: t, weight: g.weight(tail, head).clone() });
        }
        if let Some(r) = (p + 1..=n).find(|&s| present[s]) {
            let (tail, head) = (xs[p - 1], xs[r - 1]);
            edges.push(ConstraintEdge { tail, head, time: t, weight: g.weight(tail, head).clone() });
        }
        present[p] = true;
    }
    Ok(ConstraintGraph { edges })
}

/// Product of the constraint-graph edge weights.
pub fn building_weight(g: &WeightedGraph, x: &Word, sigma: &BuildOrder) -> Result<Rational> {
    Ok(constraint_graph(g, x, sigma)?.weight())
}

/// `B(x)` as the sum of `w(x; sigma)` over all `n!` build orders, with the
/// default length bound.
pub fn b_bruteforce(g: &WeightedGraph, x: &Word) -> Result<Rational> {
    b_bruteforce_bounded(g, x, DEFAULT_PERMUTATION_BOUND)
}

pub fn b_bruteforce_bounded(g: &WeightedGraph, x: &Word, bound: usize) -> Result<Rational> {
    g.check_word(x)?;
    if x.len() > bound {
        return Err(Error::PermutationBound { length: x.len(), bound });
    }
    let mut total = Rational::zero();
    let mut failure = None;
    for_each_permutation(x.len(), |perm| {
        let sigma = BuildOrder::new(perm.to_vec()).expect("heap permutation");
        match building_weight(g, x, &sigma) {
            Ok(w) => total += w,
            Err(e) => failure = Some(e),
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

/// The permutation sum for length `n`, expanded once into monomials over
/// position pairs: `B(x) = sum count * prod w(x_i, x_j)`. Orders giving the
/// same constraint edges (as positions) are merged, so a length-7 word costs
/// 132 products instead of 5040 building weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildingExpansion {
    n: usize,
    /// `(count, [(i, j)])` with 0-based positions `i < j`.
    terms: Vec<(u64, Vec<(usize, usize)>)>,
}

impl BuildingExpansion {
    pub fn new(n: usize) -> Result<Self> {
        if n > DEFAULT_PERMUTATION_BOUND {
            return Err(Error::PermutationBound { length: n, bound: DEFAULT_PERMUTATION_BOUND });
        }
        // constraint graphs of the word 0 1 ... n-1 record positions directly
        let labels = WeightedGraph::complete(n.max(1), Rational::one())?;
        let x = Word::from_indices(0..n);
        let mut merged: std::collections::BTreeMap<Vec<(usize, usize)>, u64> = Default::default();
        let mut failure = None;
        for_each_permutation(n, |perm| {
            let sigma = BuildOrder::new(perm.to_vec()).expect("heap permutation");
            match constraint_graph(&labels, &x, &sigma) {
                Ok(cg) => {
                    let mut key: Vec<(usize, usize)> = cg.edges.iter().map(|e| (e.tail.index(), e.head.index())).collect();
                    key.sort_unstable();
                    *merged.entry(key).or_default() += 1;
                }
                Err(e) => failure = Some(e),
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        Ok(BuildingExpansion { n, terms: merged.into_iter().map(|(k, c)| (c, k)).collect() })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[(u64, Vec<(usize, usize)>)] {
        &self.terms
    }

    pub fn max_degree(&self) -> usize {
        self.terms.iter().map(|t| t.1.len()).max().unwrap_or(0)
    }

    pub fn eval(&self, g: &WeightedGraph, x: &Word) -> Result<Rational> {
        g.check_word(x)?;
        if x.len() != self.n {
            return Err(Error::InvalidArgument(format!("expansion has length {}, word has length {}", self.n, x.len())));
        }
        let xs = x.symbols();
        let mut total = Rational::zero();
        for (count, edges) in &self.terms {
            let mut term = Rational::from_integer((*count).into());
            for &(i, j) in edges {
                mul_weight(&mut term, g.weight(xs[i], xs[j]));
                if term.is_zero() {
                    break;
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Integer form for weights `numerator(a, b) / den` sharing one
    /// denominator: returns `B(x) * den^max_degree`. `None` on overflow.
    pub fn eval_scaled(&self, x: &[usize], numerator: impl Fn(usize, usize) -> u64, den: u64) -> Option<u128> {
        let top = self.max_degree();
        let mut total: u128 = 0;
        for (count, edges) in &self.terms {
            let mut term = *count as u128;
            for &(i, j) in edges {
                term = term.checked_mul(numerator(x[i], x[j]) as u128)?;
            }
            for _ in edges.len()..top {
                term = term.checked_mul(den as u128)?;
            }
            total = total.checked_add(term)?;
        }
        Some(total)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleMismatch {
    pub word: Word,
    #[serde(with = "crate::rational::serde_str")]
    pub bruteforce: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub recurrence: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub factored: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSweep {
    pub max_len: usize,
    pub words_checked: usize,
    pub mismatch: Option<OracleMismatch>,
}

impl OracleSweep {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Compares the expanded permutation sum, the deletion recurrence and
/// `w(x) * B~(x)` on every word of length at most `max_len`.
pub fn oracle_sweep(g: &WeightedGraph, max_len: usize) -> Result<OracleSweep> {
    let q = g.vertex_count();
    let mut counter = BuildingCounter::new(g);
    let den = counter.denominator().clone();
    // expansion terms are evaluated in u128 when D and every numerator fit in 64 bits
    let small: Option<(u64, Vec<u64>)> = den.to_u64().and_then(|d| {
        let dr = Rational::from_integer(den.clone());
        let nums: Option<Vec<u64>> = (0..q * q).map(|k| (g.weight_ix(k / q, k % q) * &dr).to_integer().to_u64()).collect();
        nums.map(|n| (d, n))
    });
    let mut words_checked = 0;
    for n in 0..=max_len {
        let expansion = BuildingExpansion::new(n)?;
        let mut ix = vec![0usize; n];
        loop {
            let x = Word::from_indices(ix.iter().copied());
            let fast = small.as_ref().and_then(|(d, nums)| expansion.eval_scaled(&ix, |a, b| nums[a * q + b], *d));
            let rec = counter.b_scaled(x.symbols());
            let fac = counter.b_via_tilde_scaled(x.symbols());
            let agree = match fast {
                // max_degree equals the counter's exponent 2n-3 for n >= 2, and both are 0 below
                Some(v) if expansion.max_degree() == b_scale_exponent(n) => BigInt::from(v) == rec && rec == fac,
                _ => {
                    let brute = expansion.eval(g, &x)?;
                    let scale = crate::rational::pow(&Rational::from_integer(den.clone()), b_scale_exponent(n) as u32);
                    brute * scale == Rational::from_integer(rec.clone()) && rec == fac
                }
            };
            words_checked += 1;
            if !agree {
                let mismatch = OracleMismatch {
                    bruteforce: expansion.eval(g, &x)?,
                    recurrence: counter.b(x.symbols()),
                    factored: counter.b_via_tilde(x.symbols()),
                    word: x,
                };
                return Ok(OracleSweep { max_len, words_checked, mismatch: Some(mismatch) });
            }
            if !advance(&mut ix, q) {
                break;
            }
        }
    }
    Ok(OracleSweep { max_len, words_checked, mismatch: None })
}

/// Odometer step over `[q]^n`; false after the last word.
fn advance(ix: &mut [usize], q: usize) -> bool {
    for d in ix.iter_mut().rev() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}

/// Memoized evaluation of `B` and `B~` for one graph. Cache keys are exact
/// symbol sequences; entries never change once written.
///
/// Values are cached as integers over the least common denominator `D` of the
/// weights: `B(x) D^(2n-3)` and `B~(x) D^(n-2)` for a word of length `n >= 2`
/// (exponent 0 below that). Both are integers because every building of a
/// length-`n` word has at most `2n-3` edges. Accessors return exact rationals.
#[derive(Debug)]
pub struct BuildingCounter<'g> {
    graph: &'g WeightedGraph,
    q: usize,
    /// `w(i, j) * D`, row-major.
    numerators: Vec<BigInt>,
    den: BigInt,
    den_pows: Vec<BigInt>,
    b_memo: FxHashMap<Vec<VertexId>, BigInt>,
    bt_memo: FxHashMap<Vec<VertexId>, BigInt>,
}

/// Exponent of `D` carried by the cached `B` of a length-`n` word.
pub fn b_scale_exponent(n: usize) -> usize {
    (2 * n).saturating_sub(3)
}

fn bt_scale_exponent(n: usize) -> usize {
    n.saturating_sub(2)
}

impl<'g> BuildingCounter<'g> {
    pub fn new(graph: &'g WeightedGraph) -> Self {
        let q = graph.vertex_count();
        let mut den = BigInt::one();
        for i in 0..q {
            for j in 0..q {
                den = num_integer::Integer::lcm(&den, graph.weight_ix(i, j).denom());
            }
        }
        let numerators = (0..q * q)
            .map(|k| {
                let w = graph.weight_ix(k / q, k % q);
                w.numer() * (&den / w.denom())
            })
            .collect();
        BuildingCounter {
            graph,
            q,
            numerators,
            den_pows: vec![BigInt::one(), den.clone()],
            den,
            b_memo: FxHashMap::default(),
            bt_memo: FxHashMap::default(),
        }
    }

    pub fn graph(&self) -> &'g WeightedGraph {
        self.graph
    }

    /// Least common denominator of the weights.
    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn cache_len(&self) -> usize {
        self.b_memo.len() + self.bt_memo.len()
    }

    pub fn clear(&mut self) {
        self.b_memo.clear();
        self.bt_memo.clear();
    }

    fn num(&self, a: VertexId, b: VertexId) -> &BigInt {
        &self.numerators[a.index() * self.q + b.index()]
    }

    fn den_pow(&mut self, e: usize) -> BigInt {
        while self.den_pows.len() <= e {
            let next = self.den_pows.last().expect("nonempty") * &self.den;
            self.den_pows.push(next);
        }
        self.den_pows[e].clone()
    }

    fn unscale(&mut self, v: BigInt, e: usize) -> Rational {
        if self.den.is_one() {
            return Rational::from_integer(v);
        }
        let d = self.den_pow(e);
        Rational::new(v, d)
    }

    /// `B(x) = sum_i w(x_{i-1}, x_i) B(x^_i) w(x_i, x_{i+1})`.
    pub fn b(&mut self, x: &[VertexId]) -> Rational {
        let v = self.b_scaled(x);
        self.unscale(v, b_scale_exponent(x.len()))
    }

    /// `B(x) D^(2n-3)` as an integer; see [`b_scale_exponent`].
    pub fn b_scaled(&mut self, x: &[VertexId]) -> BigInt {
        let n = x.len();
        if n <= 1 {
            return BigInt::one();
        }
        if let Some(v) = self.b_memo.get(x) {
            return v.clone();
        }
        // each term needs `step` more factors of D than B(x^_i) carries
        let step = b_scale_exponent(n) - b_scale_exponent(n - 1);
        let mut total = BigInt::zero();
        let mut sub = Vec::with_capacity(n - 1);
        for i in 0..n {
            let mut factors = 0;
            let mut f = BigInt::one();
            if i > 0 {
                f *= self.num(x[i - 1], x[i]);
                factors += 1;
            }
            if i + 1 < n {
                f *= self.num(x[i], x[i + 1]);
                factors += 1;
            }
            if f.is_zero() {
                continue;
            }
            sub.clear();
            sub.extend_from_slice(&x[..i]);
            sub.extend_from_slice(&x[i + 1..]);
            let inner = self.b_scaled(&sub);
            if factors < step {
                f *= self.den_pow(step - factors);
            }
            total += inner * f;
        }
        self.b_memo.insert(x.to_vec(), total.clone());
        total
    }

    /// `B~(x) = sum_i w(x_{i-1}, x_{i+1}) B~(x^_i)`, `B~(empty) = 1`.
    pub fn b_tilde(&mut self, x: &[VertexId]) -> Rational {
        let v = self.b_tilde_scaled(x);
        self.unscale(v, bt_scale_exponent(x.len()))
    }

    fn b_tilde_scaled(&mut self, x: &[VertexId]) -> BigInt {
        let n = x.len();
        match n {
            0 | 1 => return BigInt::one(),
            2 => return BigInt::from(2),
            _ => {}
        }
        if let Some(v) = self.bt_memo.get(x) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        let mut sub = Vec::with_capacity(n - 1);
        for i in 0..n {
            let interior = i > 0 && i + 1 < n;
            if interior && self.num(x[i - 1], x[i + 1]).is_zero() {
                continue;
            }
            sub.clear();
            sub.extend_from_slice(&x[..i]);
            sub.extend_from_slice(&x[i + 1..]);
            let inner = self.b_tilde_scaled(&sub);
            total += if interior { inner * self.num(x[i - 1], x[i + 1]) } else { inner * &self.den };
        }
        self.bt_memo.insert(x.to_vec(), total.clone());
        total
    }

    /// `B(x)` through the factorization `w(x) * B~(x)`.
    pub fn b_via_tilde(&mut self, x: &[VertexId]) -> Rational {
        let v = self.b_via_tilde_scaled(x);
        self.unscale(v, b_scale_exponent(x.len()))
    }

    /// `w(x) B~(x)` on the same integer scale as [`Self::b_scaled`].
    pub fn b_via_tilde_scaled(&mut self, x: &[VertexId]) -> BigInt {
        if x.len() <= 1 {
            return BigInt::one();
        }
        let mut w = BigInt::one();
        for p in x.windows(2) {
            let a = self.num(p[0], p[1]);
            if a.is_zero() {
                return BigInt::zero();
            }
            w *= a;
        }
        w * self.b_tilde_scaled(x)
    }
}


fn mul_weight(acc: &mut Rational, w: &Rational) {
    if !w.is_one() {
        *acc *= w;
    }
}

/// `B(x)` by the deletion recurrence.
pub fn b_rec(g: &WeightedGraph, x: &Word) -> Result<Rational> {
    g.check_word(x)?;
    Ok(BuildingCounter::new(g).b(x.symbols()))
}

/// `B~(x)` by its recurrence.
pub fn b_tilde(g: &WeightedGraph, x: &Word) -> Result<Rational> {
    g.check_word(x)?;
    Ok(BuildingCounter::new(g).b_tilde(x.symbols()))
}

/// How a missing neighbor at either end of the word is treated in the
/// symbolic recurrence. Only [`Boundary::One`] is correct; the other variant
/// exists so identity checks can be shown to catch a wrong convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Boundary {
    #[default]
    One,
    Zero,
}

/// `B~` of a generic word as a polynomial in `w(a,b)`, where `a`, `b` are the
/// 1-based symbol labels of the word.
pub fn b_tilde_polynomial(labels: &[u32], boundary: Boundary) -> Polynomial {
    let n = labels.len();
    let full = (1usize << n) - 1;
    let mut memo: HashMap<usize, Polynomial> = HashMap::new();
    fn go(mask: usize, labels: &[u32], boundary: Boundary, memo: &mut HashMap<usize, Polynomial>) -> Polynomial {
        if mask == 0 {
            return Polynomial::int(1);
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let present: Vec<usize> = (0..labels.len()).filter(|i| mask & (1 << i) != 0).collect();
        let mut total = Polynomial::zero();
        for (k, &i) in present.iter().enumerate() {
            let factor = match (k.checked_sub(1).map(|p| present[p]), present.get(k + 1)) {
                (Some(l), Some(&r)) => Polynomial::var(labels[l], labels[r]),
                _ => match boundary {
                    Boundary::One => Polynomial::int(1),
                    Boundary::Zero => Polynomial::zero(),
                },
            };
            if factor.is_zero() {
                continue;
            }
            let sub = go(mask & !(1 << i), labels, boundary, memo);
            total = &total + &(&factor * &sub);
        }
        memo.insert(mask, total.clone());
        total
    }
    go(full, labels, boundary, &mut memo)
}

pub const SYMBOLIC_MAX_LEN: usize = 6;

/// `B~` of a generic length-`n` word. With `distinct` the word is
/// `1 2 ... n`, so each position pair is its own indeterminate; otherwise it is
/// the alternating word `1 2 1 2 ...`.
pub fn b_tilde_symbolic(n: usize, distinct: bool) -> Result<Polynomial> {
    b_tilde_symbolic_with(n, distinct, Boundary::One)
}

pub fn b_tilde_symbolic_with(n: usize, distinct: bool, boundary: Boundary) -> Result<Polynomial> {
    if !(2..=SYMBOLIC_MAX_LEN).contains(&n) {
        return Err(Error::InvalidArgument(format!("symbolic length must be in 2..={SYMBOLIC_MAX_LEN}, got {n}")));
    }
    let labels: Vec<u32> = if distinct { (1..=n as u32).collect() } else { (0..n as u32).map(|i| 1 + i % 2).collect() };
    Ok(b_tilde_polynomial(&labels, boundary))
}

/// Published closed forms of `B~` for a word `x_1 ... x_n` with `n` in 2..=4,
/// written over the indeterminates `w(i,j) = w(x_i, x_j)`.
pub fn b_tilde_closed_form(n: usize) -> Option<Polynomial> {
    let w = |i, j| Polynomial::var(i, j);
    let c = Polynomial::int;
    match n {
        2 => Some(c(2)),
        3 => Some(&c(4) + &(&c(2) * &w(1, 3))),
        4 => {
            let left = &w(1, 3) + &w(2, 4);
            let right = &c(3) + &w(1, 4);
            Some(&c(8) + &(&c(2) * &(&left * &right)))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn sweeps_pass() {
        let mut rng = crate::process::rng_from_seed(5);
        let g = WeightedGraph::random_rational(3, 4, 9, &mut rng).unwrap();
        let r = oracle_sweep(&g, 5).unwrap();
        assert!(r.passed());
        assert_eq!(r.words_checked, (0..=5).map(|n| 3usize.pow(n)).sum::<usize>());
        assert!(oracle_sweep(&WeightedGraph::kite(), 5).unwrap().passed());
    }

    #[test]
    fn expansion_counts_are_catalan() {
        let sizes: Vec<usize> = (0..=7).map(|n| BuildingExpansion::new(n).unwrap().term_count()).collect();
        assert_eq!(sizes, [1, 1, 1, 2, 5, 14, 42, 132]);
        let e = BuildingExpansion::new(7).unwrap();
        assert_eq!(e.max_degree(), 11);
        assert_eq!(e.terms().iter().map(|t| t.0).sum::<u64>(), 5040);
        assert!(BuildingExpansion::new(9).is_err());
    }

    #[test]
    fn expansion_matches_bruteforce() {
        let g = WeightedGraph::from_fn(3, |i, j| crate::rational::ratio((i * 3 + j + 1) as i64 % 4, 3)).unwrap();
        for n in 0..=5 {
            let e = BuildingExpansion::new(n).unwrap();
            for x in (0..3usize.pow(n as u32)).map(|m| Word::from_indices((0..n).map(|k| m / 3usize.pow(k as u32) % 3))) {
                let direct = b_bruteforce(&g, &x).unwrap();
                assert_eq!(e.eval(&g, &x).unwrap(), direct);
                let scaled = e.eval_scaled(&x.indices(), |a, b| ((a * 3 + b + 1) % 4) as u64, 3).unwrap();
                let den = Rational::from_integer(3.into());
                assert_eq!(Rational::from_integer(scaled.into()), direct * crate::rational::pow(&den, e.max_degree() as u32));
            }
        }
    }

    fn k(q: usize) -> WeightedGraph {
        WeightedGraph::complete(q, int(1)).unwrap()
    }

    fn w(ix: &[usize]) -> Word {
        Word::from_indices(ix.iter().copied())
    }

    #[test]
    fn word_weights() {
        assert_eq!(word_weight(&k(3), &w(&[0, 1, 0])), int(1));
        assert_eq!(word_weight(&k(3), &w(&[0, 0])), int(0));
        assert_eq!(word_weight(&k(3), &Word::empty()), int(1));
    }

    #[test]
    fn identity_order_gives_the_path() {
        let g = k(4);
        let x = w(&[0, 1, 2, 3, 0]);
        let cg = constraint_graph(&g, &x, &BuildOrder::identity(5)).unwrap();
        let pairs: Vec<_> = cg.edges.iter().map(|e| (e.tail.index(), e.head.index())).collect();
        assert_eq!(pairs, vec![(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(constraint_graph(&g, &w(&[2]), &BuildOrder::identity(1)).unwrap().is_empty());
        assert!(constraint_graph(&g, &w(&[2, 1]), &BuildOrder::identity(1)).is_err());
    }

    #[test]
    fn seven_symbol_building() {
        // sigma = 4752613 over x_1..x_7 with x_i = i - 1 on K_7
        let g = k(7);
        let x = w(&[0, 1, 2, 3, 4, 5, 6]);
        let cg = constraint_graph(&g, &x, &BuildOrder::from_digits("4752613").unwrap()).unwrap();
        let pairs: Vec<_> = cg.edges.iter().map(|e| (e.time, e.tail.index() + 1, e.head.index() + 1)).collect();
        assert_eq!(
            pairs,
            vec![(2, 4, 7), (3, 4, 5), (3, 5, 7), (4, 2, 4), (5, 5, 6), (5, 6, 7), (6, 1, 2), (7, 2, 3), (7, 3, 4)]
        );
        assert!(cg.len() <= 2 * (x.len() - 1));
    }

    #[test]
    fn building_weights() {
        let g = k(3);
        let x = w(&[0, 1, 0]);
        assert_eq!(building_weight(&g, &x, &BuildOrder::new(vec![1, 3, 2]).unwrap()).unwrap(), int(0));
        assert_eq!(building_weight(&g, &x, &BuildOrder::new(vec![2, 1, 3]).unwrap()).unwrap(), int(1));
        assert_eq!(building_weight(&g, &x, &BuildOrder::identity(3)).unwrap(), word_weight(&g, &x));
    }

    #[test]
    fn bruteforce_values() {
        let g = k(3);
        assert_eq!(b_bruteforce(&g, &w(&[0, 1, 0])).unwrap(), int(4));
        assert_eq!(b_bruteforce(&g, &Word::empty()).unwrap(), int(1));
        assert_eq!(b_bruteforce(&g, &w(&[2])).unwrap(), int(1));
        let long = w(&[0, 1, 0, 1, 0, 1, 0, 1, 0]);
        match b_bruteforce(&g, &long) {
            Err(Error::PermutationBound { length: 9, bound: 8 }) => {}
            other => panic!("expected bound error, got {other:?}"),
        }
    }

    #[test]
    fn recurrence_values() {
        assert_eq!(b_rec(&k(3), &w(&[0, 1, 0])).unwrap(), int(4));
        // oracle value: 8 + 2 * [w(1,1) + w(2,3)] * [3 + w(1,3)] = 16
        assert_eq!(b_bruteforce(&k(4), &w(&[0, 1, 0, 2])).unwrap(), int(16));
        assert_eq!(b_rec(&k(4), &w(&[0, 1, 0, 2])).unwrap(), int(16));
        assert_eq!(b_rec(&k(3), &w(&[0, 0, 1])).unwrap(), int(0));
    }

    #[test]
    fn reduced_count_values() {
        assert_eq!(b_tilde(&k(3), &w(&[0, 1])).unwrap(), int(2));
        assert_eq!(b_tilde(&k(3), &w(&[0, 0])).unwrap(), int(2));
        assert_eq!(b_tilde(&k(3), &w(&[0, 1, 0])).unwrap(), int(4));
        assert_eq!(b_tilde(&k(3), &w(&[0, 1, 2])).unwrap(), int(6));
        assert_eq!(b_tilde(&k(3), &Word::empty()).unwrap(), int(1));
    }

    #[test]
    fn symbolic_matches_closed_forms() {
        for n in 2..=4 {
            let sym = b_tilde_symbolic(n, true).unwrap();
            assert_eq!(sym, b_tilde_closed_form(n).unwrap(), "n = {n}");
        }
        assert_eq!(b_tilde_symbolic(3, true).unwrap().to_string(), "4 + 2*w(1,3)");
        assert_eq!(b_tilde_symbolic(2, true).unwrap(), Polynomial::int(2));
        assert!(b_tilde_symbolic(1, true).is_err());
        assert!(b_tilde_symbolic(7, true).is_err());
    }

    #[test]
    fn wrong_boundary_is_caught() {
        let bad = b_tilde_symbolic_with(2, true, Boundary::Zero).unwrap();
        assert_ne!(bad, b_tilde_closed_form(2).unwrap());
    }

    #[test]
    fn alternating_symbolic_word() {
        // 1 2 1: deleting the middle bridges 1 to 1
        assert_eq!(b_tilde_symbolic(3, false).unwrap().to_string(), "4 + 2*w(1,1)");
    }
}
