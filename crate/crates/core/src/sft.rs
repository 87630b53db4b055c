//! Loopless shifts of finite type and their de Bruijn graphs.
//!
//! Symbols are `0..q`. A shift is given by its allowed windows `W`, a set of
//! `n`-tuples with no constant tuple. The de Bruijn graph has one vertex per
//! allowed tuple (in lexicographic order) and a unit-weight edge `s -> t`
//! whenever `t` is `s` shifted left by one symbol.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dependence::TriangleScan;
use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedGraph};
use crate::process;
use crate::rational::Rational;
use crate::word::Word;

pub type Tuple = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftOfFiniteType {
    q: usize,
    n: usize,
    allowed: BTreeSet<Tuple>,
}

#[derive(Deserialize)]
struct SftFile {
    q: usize,
    n: usize,
    allowed: Vec<Tuple>,
}

impl<'de> Deserialize<'de> for ShiftOfFiniteType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = SftFile::deserialize(d)?;
        ShiftOfFiniteType::new(f.q, f.n, f.allowed).map_err(serde::de::Error::custom)
    }
}

impl ShiftOfFiniteType {
    pub fn new(q: usize, n: usize, allowed: impl IntoIterator<Item = Tuple>) -> Result<Self> {
        if q == 0 || n == 0 {
            return Err(Error::InvalidArgument("alphabet size and window length must be positive".into()));
        }
        let allowed: BTreeSet<Tuple> = allowed.into_iter().collect();
        if allowed.is_empty() {
            return Err(Error::InvalidArgument("allowed window set is empty".into()));
        }
        for t in &allowed {
            if t.len() != n {
                return Err(Error::InvalidArgument(format!("window {t:?} does not have length {n}")));
            }
            if let Some(&s) = t.iter().find(|&&s| s as usize >= q) {
                return Err(Error::InvalidArgument(format!("symbol {s} outside alphabet of size {q}")));
            }
            if t.iter().all(|&s| s == t[0]) {
                return Err(Error::InvalidArgument(format!("constant window {t:?} is not allowed")));
            }
        }
        Ok(ShiftOfFiniteType { q, n, allowed })
    }

    /// All windows `(a, b)` with `a != b`.
    pub fn proper_colorings(q: usize) -> Result<Self> {
        let q32 = q as u32;
        Self::new(q, 2, (0..q32).flat_map(|a| (0..q32).filter(move |&b| b != a).map(move |b| vec![a, b])))
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn allowed(&self) -> &BTreeSet<Tuple> {
        &self.allowed
    }

    pub fn tuples(&self) -> Vec<&Tuple> {
        self.allowed.iter().collect()
    }

    pub fn index_of(&self, t: &[u32]) -> Option<usize> {
        self.allowed.iter().position(|s| s.as_slice() == t)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("shift serializes")
    }

    /// Every window of `x` lies in `W`.
    pub fn contains(&self, x: &[u32]) -> bool {
        x.windows(self.n).all(|w| self.allowed.contains(w))
    }
}

pub fn de_bruijn(s: &ShiftOfFiniteType) -> WeightedGraph {
    let tuples = s.tuples();
    let index: BTreeMap<&[u32], usize> = tuples.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let mut entries = Vec::new();
    for (i, t) in tuples.iter().enumerate() {
        let mut next = t[1..].to_vec();
        for c in 0..s.q as u32 {
            next.push(c);
            if let Some(&j) = index.get(next.as_slice()) {
                entries.push((i, j, Rational::one()));
            }
            next.pop();
        }
    }
    WeightedGraph::from_entries(tuples.len(), &entries).expect("indices are in range")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LrSide {
    /// Number of allowed tuples whose last `n-1` symbols begin this tuple.
    Left,
    /// Number of allowed tuples whose first `n-1` symbols end this tuple.
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LrViolation {
    pub tuple: Tuple,
    pub side: LrSide,
    pub count: usize,
    /// The count every earlier tuple agreed on.
    pub expected: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LrReport {
    pub is_constant: bool,
    #[serde(rename = "K")]
    pub k: Option<usize>,
    pub violation: Option<LrViolation>,
}

/// Left and right extension counts of each allowed tuple, computed over all
/// of `W`. The shift passes when every count equals one constant `K >= 1`.
pub fn check_lr(s: &ShiftOfFiniteType) -> LrReport {
    let mut by_prefix: BTreeMap<&[u32], usize> = BTreeMap::new();
    let mut by_suffix: BTreeMap<&[u32], usize> = BTreeMap::new();
    for t in &s.allowed {
        *by_prefix.entry(&t[..s.n - 1]).or_default() += 1;
        *by_suffix.entry(&t[1..]).or_default() += 1;
    }
    let mut expected: Option<usize> = None;
    for t in &s.allowed {
        let left = by_suffix.get(&t[..s.n - 1]).copied().unwrap_or(0);
        let right = by_prefix.get(&t[1..]).copied().unwrap_or(0);
        for (side, count) in [(LrSide::Left, left), (LrSide::Right, right)] {
            let k = *expected.get_or_insert(count);
            if count != k || count == 0 {
                return LrReport {
                    is_constant: false,
                    k: None,
                    violation: Some(LrViolation { tuple: t.clone(), side, count, expected: k }),
                };
            }
        }
    }
    LrReport { is_constant: true, k: expected, violation: None }
}

/// Stitches a de Bruijn path of tuples into a symbol sequence.
pub fn project(s: &ShiftOfFiniteType, path: &[Tuple]) -> Result<Vec<u32>> {
    project_tuples(s.n, path)
}

pub fn project_tuples(n: usize, path: &[Tuple]) -> Result<Vec<u32>> {
    let Some(first) = path.first() else {
        return Ok(Vec::new());
    };
    let mut out = first.clone();
    for (i, pair) in path.windows(2).enumerate() {
        if pair[1].len() != n || pair[0].len() != n {
            return Err(Error::InvalidArgument(format!("tuple at position {} does not have length {n}", i + 1)));
        }
        if pair[0][1..] != pair[1][..n - 1] {
            return Err(Error::OverlapMismatch { position: i + 1 });
        }
        out.push(pair[1][n - 1]);
    }
    Ok(out)
}

fn word_to_path(s: &ShiftOfFiniteType, x: &Word) -> Vec<Tuple> {
    let tuples = s.tuples();
    x.symbols().iter().map(|v| tuples[v.index()].clone()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SftBatch {
    pub seed: u64,
    /// Number of de Bruijn tuples per draw; each output has `window + n - 1` symbols.
    pub window: usize,
    pub words: Vec<Vec<u32>>,
}

/// Exact draws from the de Bruijn marginal of length `window`, projected
/// to symbol sequences.
pub fn sample_sft(s: &ShiftOfFiniteType, window: usize, seed: u64, count: usize) -> Result<SftBatch> {
    if window == 0 {
        return Err(Error::InvalidArgument("window must be positive".into()));
    }
    let lr = check_lr(s);
    if !lr.is_constant {
        return Err(Error::Precondition(format!("left/right extension counts are not constant: {:?}", lr.violation)));
    }
    let g = de_bruijn(s);
    let batch = process::sample_exact(&g, window, seed, count)?;
    let words = batch.words.iter().map(|x| project(s, &word_to_path(s, x))).collect::<Result<Vec<_>>>()?;
    Ok(SftBatch { seed, window, words })
}

/// Exact law of the projected symbol sequences for a given window.
pub fn projected_marginal(s: &ShiftOfFiniteType, window: usize) -> Result<BTreeMap<Vec<u32>, Rational>> {
    let g = de_bruijn(s);
    let m = process::marginal(&g, window)?;
    let mut out = BTreeMap::new();
    for (x, p) in m.table {
        let y = project(s, &word_to_path(s, &x))?;
        *out.entry(y).or_insert_with(Rational::zero) += p;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SftCertificate {
    pub claim: String,
    pub q: usize,
    pub n: usize,
    pub tuples: usize,
    pub loopless: bool,
    pub scan: TriangleScan,
    pub issued: bool,
    pub argument: Vec<String>,
}

/// Scans the de Bruijn graph for a directed triangle. A triangle `a -> b -> c`
/// with `a -> c` forces `b` to be constant, so for a loopless shift the scan
/// comes back empty and the certificate is issued.
pub fn not_finitely_dependent_certificate(s: &ShiftOfFiniteType) -> SftCertificate {
    let g = de_bruijn(s);
    let scan = TriangleScan::run(&g);
    let loopless = s.allowed.iter().all(|t| t.iter().any(|&c| c != t[0]));
    let issued = loopless && scan.triangle.is_none();
    let mut argument = vec![
        "a finitely dependent symbol process makes the tuple process finitely dependent".to_string(),
        "a finitely dependent insertion process on a graph needs a directed triangle".to_string(),
        "edges a->b, b->c, a->c between windows force b to be a constant window".to_string(),
    ];
    match scan.triangle {
        None => argument.push(format!(
            "scan of {} edges and {} two-step walks in the de Bruijn graph found no triangle",
            scan.edges, scan.two_step_walks
        )),
        Some((a, b, c)) => argument.push(format!("triangle ({a},{b},{c}) found; no certificate")),
    }
    SftCertificate {
        claim: "the insertion process of this shift is not finitely dependent".into(),
        q: s.q,
        n: s.n,
        tuples: s.allowed.len(),
        loopless,
        scan,
        issued,
        argument,
    }
}

/// Vertex of the de Bruijn graph holding tuple `t`.
pub fn tuple_vertex(s: &ShiftOfFiniteType, t: &[u32]) -> Option<VertexId> {
    s.index_of(t).map(VertexId::new)
}

/// Every loopless shift over `q` symbols with window `n`; `2^(q^n - q) - 1` of them.
pub fn all_loopless(q: usize, n: usize) -> Vec<ShiftOfFiniteType> {
    let mut windows = Vec::new();
    let mut t = vec![0u32; n];
    loop {
        if t.iter().any(|&c| c != t[0]) {
            windows.push(t.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                let m = windows.len();
                return (1u64..(1u64 << m))
                    .map(|mask| {
                        let allowed = (0..m).filter(|b| mask >> b & 1 == 1).map(|b| windows[b].clone());
                        ShiftOfFiniteType::new(q, n, allowed).expect("loopless by construction")
                    })
                    .collect();
            }
            i -= 1;
            t[i] += 1;
            if (t[i] as usize) < q {
                break;
            }
            t[i] = 0;
        }
    }
}
