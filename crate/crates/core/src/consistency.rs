//! Bounded-window verification of property (C): one-symbol extensions of
//! `B` on either side must be a common multiple `C_n` of `B`.
//!
//! The check runs in the reduced form. For a word `x` of length `n` with
//! `w(x) > 0` it compares
//!
//! ```text
//! sum_v B~(x v) w(x_n, v)      sum_v w(v, x_1) B~(v x)
//! -----------------------  and  -----------------------
//!          B~(x)                        B~(x)
//! ```
//!
//! against the value at the lexicographically least positive word, by
//! cross-multiplication. Zero-weight words satisfy the identity trivially
//! since `B = w B~`.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::buildings::BuildingCounter;
use crate::error::{Error, Result};
use crate::graph::{Kite, VertexId, WeightedGraph};
use crate::rational::{self, Rational};
use crate::word::Word;

const CHUNK: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyCounterexample {
    pub n: usize,
    pub word: Word,
    pub side: Side,
    /// The lexicographically least positive word of length `n`, which fixes `C_n`.
    pub canonical: Word,
    /// `[C_n from the canonical word, ratio observed at word/side]`.
    #[serde(with = "crate::rational::serde_vec")]
    pub ratios: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    /// Every length `n < verified_up_to` passed.
    pub verified_up_to: usize,
    /// `C_1, C_2, ...`; present iff there is no counterexample.
    #[serde(with = "crate::rational::serde_opt_vec")]
    pub constants: Option<Vec<Rational>>,
    pub counterexample: Option<ConsistencyCounterexample>,
    /// Set when some length has no positive-weight word; verification stops
    /// there. Unreachable once `C_{n-1} > 0` holds, since every positive word
    /// then extends.
    pub degenerate: bool,
}

impl ConsistencyReport {
    pub fn is_verified(&self) -> bool {
        self.counterexample.is_none()
    }

    /// `C_n` for `n >= 1`.
    pub fn constant(&self, n: usize) -> Option<&Rational> {
        self.constants.as_ref().and_then(|c| c.get(n.checked_sub(1)?))
    }
}

/// Right and left one-symbol extension sums of `x` in the reduced form.
pub fn extension_sums(counter: &mut BuildingCounter<'_>, x: &[VertexId]) -> (Rational, Rational) {
    let g = counter.graph();
    let n = x.len();
    let mut buf = Vec::with_capacity(n + 1);
    let mut right = Rational::zero();
    for &v in g.out_neighbors(x[n - 1]) {
        buf.clear();
        buf.extend_from_slice(x);
        buf.push(v);
        right += counter.b_tilde(&buf) * g.weight(x[n - 1], v);
    }
    let mut left = Rational::zero();
    for &v in g.in_neighbors(x[0]) {
        buf.clear();
        buf.push(v);
        buf.extend_from_slice(x);
        left += counter.b_tilde(&buf) * g.weight(v, x[0]);
    }
    (right, left)
}

struct WordSums {
    base: Rational,
    right: Rational,
    left: Rational,
}

fn sums_for(g: &WeightedGraph, words: &[Word]) -> Vec<WordSums> {
    words
        .par_chunks(CHUNK)
        .flat_map_iter(|chunk| {
            let mut counter = BuildingCounter::new(g);
            chunk
                .iter()
                .map(|x| {
                    let base = counter.b_tilde(x.symbols());
                    let (right, left) = extension_sums(&mut counter, x.symbols());
                    WordSums { base, right, left }
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Checks property (C) for every length `1 <= n < max_n`.
pub fn check_property_c(g: &WeightedGraph, max_n: usize) -> Result<ConsistencyReport> {
    if max_n < 2 {
        return Err(Error::InvalidArgument(format!("property (C) needs N >= 2, got {max_n}")));
    }
    let mut constants = Vec::new();
    for n in 1..max_n {
        let words = g.positive_words(n);
        if words.is_empty() {
            return Ok(ConsistencyReport { verified_up_to: n, constants: Some(constants), counterexample: None, degenerate: true });
        }
        let sums = sums_for(g, &words);
        let anchor = &sums[0];
        let c_n = &anchor.right / &anchor.base;
        let fail = |i: usize, side: Side, observed: Rational| {
            let counterexample =
                ConsistencyCounterexample { n, word: words[i].clone(), side, canonical: words[0].clone(), ratios: vec![c_n.clone(), observed] };
            ConsistencyReport { verified_up_to: n, constants: None, counterexample: Some(counterexample), degenerate: false }
        };
        if !c_n.is_positive() {
            return Ok(fail(0, Side::Right, c_n.clone()));
        }
        for (i, s) in sums.iter().enumerate() {
            // a/b = c/d  iff  a d = c b
            let expected = &anchor.right * &s.base;
            if &s.right * &anchor.base != expected {
                return Ok(fail(i, Side::Right, &s.right / &s.base));
            }
            if &s.left * &anchor.base != expected {
                return Ok(fail(i, Side::Left, &s.left / &s.base));
            }
        }
        constants.push(c_n);
    }
    Ok(ConsistencyReport { verified_up_to: max_n, constants: Some(constants), counterexample: None, degenerate: false })
}

/// `T_n(i,j) = sum_v w(i,v)^ceil(n/2) w(j,v)^floor(n/2)` with `0^0 = 1`.
pub fn t_n(g: &WeightedGraph, i: VertexId, j: VertexId, n: usize) -> Result<Rational> {
    g.check_vertex(i.index())?;
    g.check_vertex(j.index())?;
    if i == j {
        return Err(Error::InvalidArgument("T_n is defined for distinct vertices only".into()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("T_n needs n >= 1".into()));
    }
    let hi = n.div_ceil(2) as u32;
    let lo = (n / 2) as u32;
    Ok(g.vertices().map(|v| rational::pow(g.weight(i, v), hi) * rational::pow(g.weight(j, v), lo)).sum())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TWitness {
    pub n: usize,
    pub reference: (VertexId, VertexId),
    #[serde(with = "crate::rational::serde_str")]
    pub reference_value: Rational,
    pub pair: (VertexId, VertexId),
    #[serde(with = "crate::rational::serde_str")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TInvarianceReport {
    pub invariant: bool,
    pub max_n: usize,
    pub witness: Option<TWitness>,
}

/// Whether `T_n(i,j)` is the same for all ordered distinct pairs, for each
/// `n <= max_n`. Requires a loopless graph with every off-diagonal weight
/// positive.
pub fn check_t_invariance(g: &WeightedGraph, max_n: usize) -> Result<TInvarianceReport> {
    if max_n == 0 {
        return Err(Error::InvalidArgument("max_n must be at least 1".into()));
    }
    let vn = g.vertex_count();
    if !g.is_loopless() {
        return Err(Error::Precondition("T-invariance requires a loopless graph".into()));
    }
    if (0..vn).any(|i| (0..vn).any(|j| i != j && g.weight_ix(i, j).is_zero())) {
        return Err(Error::Precondition("T-invariance requires every off-diagonal weight to be positive".into()));
    }
    if vn < 2 {
        return Ok(TInvarianceReport { invariant: true, max_n, witness: None });
    }
    let pairs: Vec<(VertexId, VertexId)> =
        g.vertices().flat_map(|i| g.vertices().filter(move |&j| j != i).map(move |j| (i, j))).collect();
    for n in 1..=max_n {
        let reference = pairs[0];
        let reference_value = t_n(g, reference.0, reference.1, n)?;
        for &pair in &pairs[1..] {
            let value = t_n(g, pair.0, pair.1, n)?;
            if value != reference_value {
                return Ok(TInvarianceReport {
                    invariant: false,
                    max_n,
                    witness: Some(TWitness { n, reference, reference_value, pair, value }),
                });
            }
        }
    }
    Ok(TInvarianceReport { invariant: true, max_n, witness: None })
}

/// Closed form `w (w - 1) (q/2 - (w + 1)/(w + 2))` for `w K_q`, checked
/// against the direct sum; errors if the two disagree.
pub fn unif_defect(q: usize, w: &Rational) -> Result<Rational> {
    let closed = unif_defect_closed_form(q, w)?;
    let direct = unif_defect_direct(q, w)?;
    if closed != direct {
        return Err(Error::Precondition(format!(
            "closed form {} differs from direct sum {}",
            rational::format(&closed),
            rational::format(&direct)
        )));
    }
    Ok(closed)
}

pub fn unif_defect_closed_form(q: usize, w: &Rational) -> Result<Rational> {
    if q < 3 {
        return Err(Error::InvalidArgument(format!("the uniformity defect needs q >= 3, got {q}")));
    }
    if !w.is_positive() {
        return Err(Error::InvalidArgument("weight must be positive".into()));
    }
    let one = Rational::one();
    let two = rational::int(2);
    let half_q = rational::ratio(q as i64, 2);
    Ok(w * (w - &one) * (half_q - (w + &one) / (w + &two)))
}

/// `sum_v [B~(121v)/B~(121) - B~(321v)/B~(321)]` on `w K_q`, over the
/// extensions `v` adjacent to the final symbol.
pub fn unif_defect_direct(q: usize, w: &Rational) -> Result<Rational> {
    if q < 3 {
        return Err(Error::InvalidArgument(format!("the uniformity defect needs q >= 3, got {q}")));
    }
    let g = WeightedGraph::complete(q, w.clone())?;
    let mut counter = BuildingCounter::new(&g);
    let v = VertexId::new;
    let a = [v(0), v(1), v(0)];
    let b = [v(2), v(1), v(0)];
    let base_a = counter.b_tilde(&a);
    let base_b = counter.b_tilde(&b);
    let mut total = Rational::zero();
    for &u in g.out_neighbors(v(0)) {
        let ext_a = counter.b_tilde(&[v(0), v(1), v(0), u]);
        let ext_b = counter.b_tilde(&[v(2), v(1), v(0), u]);
        total += ext_a / &base_a - ext_b / &base_b;
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KiteObstruction {
    pub kite: Kite,
    /// `sum_v [B~(babv) - B~(dabv)] w(b,v)`
    #[serde(with = "crate::rational::serde_str")]
    pub lhs: Rational,
    /// `C_3 [B~(bab) - B~(dab)]`, with `C_3 = 0` when property (C) fails.
    #[serde(with = "crate::rational::serde_str")]
    pub rhs: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub bracket: Rational,
    #[serde(with = "crate::rational::serde_opt")]
    pub c3: Option<Rational>,
    /// The `v = c` term of `lhs`, equal to `2 w^3`.
    #[serde(with = "crate::rational::serde_str")]
    pub term_at_c: Rational,
}

impl KiteObstruction {
    /// `lhs > 0` while the bracket vanishes: property (C) cannot hold.
    pub fn certifies_failure(&self) -> bool {
        self.lhs.is_positive() && self.bracket.is_zero()
    }
}

/// Evaluates both sides of the extension identity around a kite `(abc; d)`.
pub fn kite_obstruction(g: &WeightedGraph, kite: &Kite) -> Result<KiteObstruction> {
    if !g.uniform_weight().is_uniform {
        return Err(Error::Precondition("kite obstruction requires a uniform-weight graph".into()));
    }
    if !g.is_kite(kite) {
        return Err(Error::Precondition(format!("{kite} is not an induced kite")));
    }
    let (a, b, d) = (kite.a, kite.b, kite.d);
    let mut counter = BuildingCounter::new(g);
    let mut lhs = Rational::zero();
    let mut term_at_c = Rational::zero();
    for v in g.vertices() {
        let wbv = g.weight(b, v);
        if wbv.is_zero() {
            continue;
        }
        let term = (counter.b_tilde(&[b, a, b, v]) - counter.b_tilde(&[d, a, b, v])) * wbv;
        if v == kite.c {
            term_at_c = term.clone();
        }
        lhs += term;
    }
    let bracket = counter.b_tilde(&[b, a, b]) - counter.b_tilde(&[d, a, b]);
    let report = check_property_c(g, 4)?;
    let c3 = report.constant(3).cloned();
    let rhs = c3.clone().unwrap_or_else(Rational::zero) * &bracket;
    Ok(KiteObstruction { kite: *kite, lhs, rhs, bracket, c3, term_at_c })
}
