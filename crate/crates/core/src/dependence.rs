//! Bounded-window decision of `k`-dependence.
//!
//! For a graph with property (C), the process is `k`-dependent iff
//! `sum_{W in V^k} B(x W y) = C_{n,m} B(x) B(y)` for all words `x` of length
//! `n` and `y` of length `m`. The check anchors `C_{n,m}` at the
//! lexicographically least positive pair and compares every other pair by
//! cross-multiplication. Words related by a graph automorphism give the same
//! identity, so only automorphism-canonical `x` are visited.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::buildings::{is_positive_walk, BuildingCounter};
use crate::consistency::check_property_c;
use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedGraph};
use crate::rational::Rational;
use crate::symmetry::Automorphisms;
use crate::word::Word;

const CHUNK: usize = 64;

/// Zero-weight words `x` checked per `(n, m)` for `lhs = 0`.
pub const ZERO_SAMPLE: usize = 4;

/// `sum_W B(x W y)` over middles `W` of length `k` that make `x W y` a
/// positive walk; every other middle contributes zero.
pub fn k_dep_lhs(g: &WeightedGraph, x: &Word, y: &Word, k: usize) -> Result<Rational> {
    g.check_word(x)?;
    g.check_word(y)?;
    let mut counter = BuildingCounter::new(g);
    Ok(lhs_with(&mut counter, x.symbols(), y.symbols(), k))
}

pub(crate) fn lhs_with(counter: &mut BuildingCounter<'_>, x: &[VertexId], y: &[VertexId], k: usize) -> Rational {
    let g = counter.graph();
    if !is_positive_walk(g, x) || !is_positive_walk(g, y) {
        return Rational::zero();
    }
    let mut total = Rational::zero();
    let mut prefix = x.to_vec();
    let target = x.len() + k;
    let mut middles: Vec<Vec<VertexId>> = Vec::new();
    g.walks_from(target, &mut prefix, &mut |walk| {
        let joins = match (walk.last(), y.first()) {
            (Some(&a), Some(&b)) => g.is_edge(a, b),
            _ => true,
        };
        if joins {
            middles.push(walk.to_vec());
        }
    });
    for mut z in middles {
        z.extend_from_slice(y);
        total += counter.b_via_tilde(&z);
    }
    total
}

/// Direct sum over all `|V|^k` middles with the deletion recurrence, used
/// to confirm `lhs = 0` for zero-weight words without trusting the walk
/// restriction.
fn lhs_unrestricted(counter: &mut BuildingCounter<'_>, x: &[VertexId], y: &[VertexId], k: usize) -> Rational {
    let n = counter.graph().vertex_count();
    let mut total = Rational::zero();
    let mut middle = vec![0usize; k];
    loop {
        let z: Vec<VertexId> = x.iter().copied().chain(middle.iter().map(|&i| VertexId::new(i))).chain(y.iter().copied()).collect();
        total += counter.b(&z);
        let mut pos = k;
        loop {
            if pos == 0 {
                return total;
            }
            pos -= 1;
            middle[pos] += 1;
            if middle[pos] < n {
                break;
            }
            middle[pos] = 0;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairConstant {
    pub n: usize,
    pub m: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DependenceCounterexample {
    pub x: Word,
    pub y: Word,
    #[serde(with = "crate::rational::serde_str")]
    pub lhs: Rational,
    /// `C_{n,m} B(x) B(y)`
    #[serde(with = "crate::rational::serde_str")]
    pub expected: Rational,
    pub canonical_x: Word,
    pub canonical_y: Word,
    #[serde(with = "crate::rational::serde_str")]
    pub canonical_lhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DependenceReport {
    pub k: usize,
    pub max_n: usize,
    pub max_m: usize,
    pub verified: bool,
    pub constants: Vec<PairConstant>,
    pub counterexample: Option<DependenceCounterexample>,
    /// Zero-weight words confirmed to give `lhs = 0`.
    pub zero_checks: usize,
    /// Order of the automorphism group used to skip equivalent `x`.
    pub automorphisms: usize,
}

impl DependenceReport {
    pub fn constant(&self, n: usize, m: usize) -> Option<&Rational> {
        self.constants.iter().find(|c| c.n == n && c.m == m).map(|c| &c.value)
    }
}

/// Requires property (C) on the window `max(max_n, max_m) + 1`.
pub fn check_k_dependence(g: &WeightedGraph, k: usize, max_n: usize, max_m: usize) -> Result<DependenceReport> {
    if max_n == 0 || max_m == 0 {
        return Err(Error::InvalidArgument("window sizes must be at least 1".into()));
    }
    let pc = check_property_c(g, max_n.max(max_m) + 1)?;
    if !pc.is_verified() {
        return Err(Error::Precondition(format!(
            "k-dependence requires property (C); it fails at length {}",
            pc.verified_up_to
        )));
    }
    let autos = Automorphisms::of(g);
    check_with(g, k, max_n, max_m, &autos)
}

pub(crate) fn check_with(g: &WeightedGraph, k: usize, max_n: usize, max_m: usize, autos: &Automorphisms) -> Result<DependenceReport> {
    let mut report = DependenceReport {
        k,
        max_n,
        max_m,
        verified: true,
        constants: Vec::new(),
        counterexample: None,
        zero_checks: 0,
        automorphisms: autos.len(),
    };
    let words: Vec<Vec<Word>> = (0..=max_n.max(max_m)).map(|len| g.positive_words(len)).collect();
    let mut counter = BuildingCounter::new(g);
    for n in 1..=max_n {
        for m in 1..=max_m {
            let xs = &words[n];
            let ys = &words[m];
            let (x0, y0) = (&xs[0], &ys[0]);
            let l0 = lhs_with(&mut counter, x0.symbols(), y0.symbols(), k);
            let p0 = counter.b_via_tilde(x0.symbols()) * counter.b_via_tilde(y0.symbols());
            let c_nm = &l0 / &p0;
            let base = |x: &Word, y: &Word, lhs: Rational, expected: Rational| DependenceCounterexample {
                x: x.clone(),
                y: y.clone(),
                lhs,
                expected,
                canonical_x: x0.clone(),
                canonical_y: y0.clone(),
                canonical_lhs: l0.clone(),
            };
            if !c_nm.is_positive() {
                // a zero constant forces every lhs to vanish; report the first that does not
                report.verified = false;
                let witness = xs
                    .iter()
                    .flat_map(|x| ys.iter().map(move |y| (x, y)))
                    .map(|(x, y)| (x, y, lhs_with(&mut counter, x.symbols(), y.symbols(), k)))
                    .find(|(_, _, l)| !l.is_zero());
                report.counterexample = Some(match witness {
                    Some((x, y, l)) => base(x, y, l, Rational::zero()),
                    None => base(x0, y0, l0.clone(), Rational::zero()),
                });
                return Ok(report);
            }
            let by: Vec<Rational> = ys.iter().map(|y| counter.b_via_tilde(y.symbols())).collect();
            for x in xs.iter().filter(|x| autos.is_canonical(x.symbols())) {
                let bx = counter.b_via_tilde(x.symbols());
                let lhs: Vec<Rational> = ys
                    .par_chunks(CHUNK)
                    .flat_map_iter(|chunk| {
                        let mut local = BuildingCounter::new(g);
                        chunk.iter().map(|y| lhs_with(&mut local, x.symbols(), y.symbols(), k)).collect::<Vec<_>>()
                    })
                    .collect();
                for ((y, l), b_y) in ys.iter().zip(lhs).zip(&by) {
                    let product = &bx * b_y;
                    if &l * &p0 != &l0 * &product {
                        report.verified = false;
                        let expected = &c_nm * &product;
                        report.counterexample = Some(base(x, y, l, expected));
                        return Ok(report);
                    }
                }
            }
            for x in zero_weight_sample(g, n, ZERO_SAMPLE) {
                let l = lhs_unrestricted(&mut counter, &x, y0.symbols(), k);
                if !l.is_zero() {
                    report.verified = false;
                    report.counterexample = Some(base(&Word::new(x), y0, l, Rational::zero()));
                    return Ok(report);
                }
                report.zero_checks += 1;
            }
            report.constants.push(PairConstant { n, m, value: c_nm });
        }
    }
    Ok(report)
}

/// The first `limit` zero-weight words of length `n` in lexicographic order.
fn zero_weight_sample(g: &WeightedGraph, n: usize, limit: usize) -> Vec<Vec<VertexId>> {
    let q = g.vertex_count();
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    loop {
        let word: Vec<VertexId> = cur.iter().map(|&i| VertexId::new(i)).collect();
        if !is_positive_walk(g, &word) {
            out.push(word);
            if out.len() == limit {
                return out;
            }
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            cur[pos] += 1;
            if cur[pos] < q {
                break;
            }
            cur[pos] = 0;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinKReport {
    pub min_k: Option<usize>,
    pub max_k: usize,
    /// One report per gap tried, in order; failures carry their witnesses.
    pub attempts: Vec<DependenceReport>,
}

/// Least `k <= max_k` passing [`check_k_dependence`]. Each gap is checked on
/// its own; passing at `k` says nothing about `k - 1` here.
pub fn min_k_search(g: &WeightedGraph, max_k: usize, max_n: usize, max_m: usize) -> Result<MinKReport> {
    if max_n == 0 || max_m == 0 {
        return Err(Error::InvalidArgument("window sizes must be at least 1".into()));
    }
    let pc = check_property_c(g, max_n.max(max_m) + 1)?;
    if !pc.is_verified() {
        return Err(Error::Precondition("minimal-gap search requires property (C)".into()));
    }
    let autos = Automorphisms::of(g);
    let mut attempts = Vec::new();
    for k in 0..=max_k {
        let r = check_with(g, k, max_n, max_m, &autos)?;
        let ok = r.verified;
        attempts.push(r);
        if ok {
            return Ok(MinKReport { min_k: Some(k), max_k, attempts });
        }
    }
    Ok(MinKReport { min_k: None, max_k, attempts })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    NotFinitelyDependent,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleScan {
    /// `(a, b)` edges examined.
    pub edges: usize,
    /// `(a, b, c)` two-step walks examined for a closing edge `(a, c)`.
    pub two_step_walks: usize,
    pub triangle: Option<(VertexId, VertexId, VertexId)>,
}

impl TriangleScan {
    pub fn run(g: &WeightedGraph) -> Self {
        let mut edges = 0;
        let mut two_step_walks = 0;
        for a in g.vertices() {
            for &b in g.out_neighbors(a) {
                edges += 1;
                for &c in g.out_neighbors(b) {
                    two_step_walks += 1;
                    if g.is_edge(a, c) {
                        return TriangleScan { edges, two_step_walks, triangle: Some((a, b, c)) };
                    }
                }
            }
        }
        TriangleScan { edges, two_step_walks, triangle: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleCertificate {
    pub claim: String,
    pub verdict: Verdict,
    pub scan: TriangleScan,
    pub reason: String,
}

/// A finitely dependent insertion process needs a directed triangle; without
/// one the graph is certified not finitely dependent.
pub fn triangle_necessity(g: &WeightedGraph) -> TriangleCertificate {
    let scan = TriangleScan::run(g);
    let claim = "a finitely dependent insertion process requires a directed triangle".to_string();
    match scan.triangle {
        None => TriangleCertificate {
            claim,
            verdict: Verdict::NotFinitelyDependent,
            reason: format!(
                "exhaustive scan of {} edges and {} two-step walks found no (a,b,c) with w(a,b) w(b,c) w(a,c) > 0",
                scan.edges, scan.two_step_walks
            ),
            scan,
        },
        Some((a, b, c)) => TriangleCertificate {
            claim,
            verdict: Verdict::Inconclusive,
            reason: format!("directed triangle ({a},{b},{c}) present; the necessary condition holds"),
            scan,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn k(q: usize) -> WeightedGraph {
        WeightedGraph::complete(q, int(1)).unwrap()
    }

    fn w(ix: &[usize]) -> Word {
        Word::from_indices(ix.iter().copied())
    }

    #[test]
    fn lhs_values() {
        assert_eq!(k_dep_lhs(&k(4), &w(&[0]), &w(&[1]), 1).unwrap(), int(12));
        assert_eq!(k_dep_lhs(&k(4), &w(&[0]), &w(&[0]), 1).unwrap(), int(12));
        assert_eq!(k_dep_lhs(&k(3), &w(&[0]), &w(&[0]), 1).unwrap(), int(8));
        assert_eq!(k_dep_lhs(&k(3), &w(&[0]), &w(&[1]), 1).unwrap(), int(6));
    }

    #[test]
    fn lhs_matches_unrestricted_sum() {
        let g = k(3);
        let mut c = BuildingCounter::new(&g);
        for (x, y) in [(vec![0], vec![1]), (vec![0, 1], vec![0]), (vec![2, 0], vec![1, 2])] {
            let xs = w(&x);
            let ys = w(&y);
            for gap in 0..3 {
                let a = lhs_with(&mut c, xs.symbols(), ys.symbols(), gap);
                let b = lhs_unrestricted(&mut c, xs.symbols(), ys.symbols(), gap);
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn k4_is_one_dependent() {
        let r = check_k_dependence(&k(4), 1, 3, 3).unwrap();
        assert!(r.verified, "{r:?}");
        assert!(r.zero_checks > 0);
    }

    #[test]
    fn k3_needs_gap_two() {
        let r = check_k_dependence(&k(3), 1, 3, 3).unwrap();
        let cx = r.counterexample.unwrap();
        assert_eq!((cx.canonical_x.clone(), cx.canonical_y.clone()), (w(&[0]), w(&[0])));
        assert_eq!((cx.x.clone(), cx.y.clone()), (w(&[0]), w(&[1])));
        assert_eq!((cx.canonical_lhs, cx.lhs), (int(8), int(6)));
        assert!(check_k_dependence(&k(3), 2, 3, 3).unwrap().verified);
    }

    #[test]
    fn minimal_gaps() {
        assert_eq!(min_k_search(&k(4), 3, 3, 3).unwrap().min_k, Some(1));
        assert_eq!(min_k_search(&k(3), 3, 3, 3).unwrap().min_k, Some(2));
        let r = min_k_search(&k(2), 5, 3, 3).unwrap();
        assert_eq!(r.min_k, None);
        assert!(r.attempts.iter().all(|a| a.counterexample.is_some()));
    }

    #[test]
    fn requires_property_c() {
        let g = WeightedGraph::complete(3, int(2)).unwrap();
        assert!(matches!(check_k_dependence(&g, 2, 3, 3), Err(Error::Precondition(_))));
    }

    #[test]
    fn triangle_certificates() {
        let c4 = WeightedGraph::cycle(4).unwrap();
        let cert = triangle_necessity(&c4);
        assert_eq!(cert.verdict, Verdict::NotFinitelyDependent);
        assert_eq!(cert.scan.edges, 8);
        assert_eq!(triangle_necessity(&k(3)).verdict, Verdict::Inconclusive);
    }
}
