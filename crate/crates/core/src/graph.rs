//! Weighted directed graphs with exact weights, the graph families used by
//! the classification results, and the structural predicates they quantify
//! over.
//!
//! Vertices are dense indices `0..vertex_count`. Weights are total on ordered
//! pairs; pairs never set have weight zero. Symmetry and looplessness are
//! predicates, not structural assumptions, since de Bruijn graphs are directed.

use std::collections::VecDeque;
use std::fmt;
use std::path::Path;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn new(index: usize) -> Self {
        VertexId(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    weights: Vec<Rational>,
    out_neighbors: Vec<Vec<VertexId>>,
    in_neighbors: Vec<Vec<VertexId>>,
}

impl WeightedGraph {
    /// The graph on `vertex_count` vertices with every weight zero.
    pub fn empty(vertex_count: usize) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidArgument("a graph needs at least one vertex".into()));
        }
        Ok(WeightedGraph {
            n: vertex_count,
            weights: vec![Rational::zero(); vertex_count * vertex_count],
            out_neighbors: vec![Vec::new(); vertex_count],
            in_neighbors: vec![Vec::new(); vertex_count],
        })
    }

    pub fn from_fn(vertex_count: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Result<Self> {
        let mut g = Self::empty(vertex_count)?;
        for i in 0..vertex_count {
            for j in 0..vertex_count {
                let w = f(i, j);
                if w.is_negative() {
                    return Err(Error::NegativeWeight { i, j, weight: rational::format(&w) });
                }
                g.weights[i * vertex_count + j] = w;
            }
        }
        g.rebuild_adjacency();
        Ok(g)
    }

    /// Builds from `(i, j, weight)` triples; later triples overwrite earlier ones.
    pub fn from_entries(vertex_count: usize, entries: &[(usize, usize, Rational)]) -> Result<Self> {
        let mut g = Self::empty(vertex_count)?;
        for (i, j, w) in entries {
            g.check_vertex(*i)?;
            g.check_vertex(*j)?;
            if w.is_negative() {
                return Err(Error::NegativeWeight { i: *i, j: *j, weight: rational::format(w) });
            }
            g.weights[i * vertex_count + j] = w.clone();
        }
        g.rebuild_adjacency();
        Ok(g)
    }

    /// Symmetric unit-weight graph from an undirected edge list.
    pub fn from_undirected_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let entries: Vec<_> = edges
            .iter()
            .flat_map(|&(a, b)| [(a, b, Rational::one()), (b, a, Rational::one())])
            .collect();
        Self::from_entries(vertex_count, &entries)
    }

    /// `w * K_q`: every off-diagonal pair has weight `w`.
    pub fn complete(q: usize, w: Rational) -> Result<Self> {
        Self::multipartite(q, 1, w)
    }

    /// `w * K_{r,...,r}` with `q` parts: vertices `0..q*r`, and `w(i, j) = w`
    /// exactly when `i` and `j` differ mod `q`.
    pub fn multipartite(q: usize, r: usize, w: Rational) -> Result<Self> {
        if q == 0 || r == 0 {
            return Err(Error::InvalidArgument(format!("multipartite graph needs q, r >= 1 (got q={q}, r={r})")));
        }
        if !w.is_positive() {
            return Err(Error::InvalidArgument("multipartite weight must be positive".into()));
        }
        Self::from_fn(q * r, |i, j| if i % q != j % q { w.clone() } else { Rational::zero() })
    }

    pub fn path(vertex_count: usize) -> Result<Self> {
        let edges: Vec<_> = (1..vertex_count).map(|i| (i - 1, i)).collect();
        Self::from_undirected_edges(vertex_count, &edges)
    }

    pub fn cycle(vertex_count: usize) -> Result<Self> {
        if vertex_count < 3 {
            return Err(Error::InvalidArgument("a cycle needs at least 3 vertices".into()));
        }
        let edges: Vec<_> = (0..vertex_count).map(|i| (i, (i + 1) % vertex_count)).collect();
        Self::from_undirected_edges(vertex_count, &edges)
    }

    /// Directed weights `a / den` with `a` uniform in `0..=max_numerator`,
    /// loops included.
    pub fn random_rational(vertex_count: usize, den: u64, max_numerator: u64, rng: &mut impl rand::Rng) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidArgument("denominator must be positive".into()));
        }
        Self::from_fn(vertex_count, |_, _| rational::ratio(rng.random_range(0..=max_numerator) as i64, den as i64))
    }

    /// Least common denominator of all weights, if it fits in 64 bits.
    pub fn common_denominator(&self) -> Option<u64> {
        let mut l = num_bigint::BigInt::one();
        for w in &self.weights {
            l = num_integer::Integer::lcm(&l, w.denom());
        }
        l.to_u64()
    }

    /// Triangle `{0, 1, 2}` with vertex `3` attached to `0` only.
    pub fn kite() -> Self {
        Self::from_undirected_edges(4, &[(0, 1), (1, 2), (0, 2), (0, 3)]).expect("kite is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n).map(VertexId::new)
    }

    pub fn weight(&self, i: VertexId, j: VertexId) -> &Rational {
        &self.weights[i.index() * self.n + j.index()]
    }

    pub fn weight_ix(&self, i: usize, j: usize) -> &Rational {
        &self.weights[i * self.n + j]
    }

    pub fn is_edge(&self, i: VertexId, j: VertexId) -> bool {
        !self.weight(i, j).is_zero()
    }

    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.out_neighbors[v.index()]
    }

    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.in_neighbors[v.index()]
    }

    pub fn set_weight(&mut self, i: usize, j: usize, w: Rational) -> Result<()> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if w.is_negative() {
            return Err(Error::NegativeWeight { i, j, weight: rational::format(&w) });
        }
        self.weights[i * self.n + j] = w;
        self.rebuild_adjacency();
        Ok(())
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, vertex_count: self.n })
        } else {
            Ok(())
        }
    }

    pub fn check_word(&self, x: &Word) -> Result<()> {
        x.symbols().iter().try_for_each(|v| self.check_vertex(v.index()))
    }

    fn rebuild_adjacency(&mut self) {
        let n = self.n;
        for v in 0..n {
            self.out_neighbors[v] = (0..n).filter(|&j| !self.weights[v * n + j].is_zero()).map(VertexId::new).collect();
            self.in_neighbors[v] = (0..n).filter(|&i| !self.weights[i * n + v].is_zero()).map(VertexId::new).collect();
        }
    }

    pub fn edge_count(&self) -> usize {
        self.out_neighbors.iter().map(Vec::len).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.weight_ix(i, j) == self.weight_ix(j, i)))
    }

    pub fn is_loopless(&self) -> bool {
        (0..self.n).all(|i| self.weight_ix(i, i).is_zero())
    }

    /// Symmetric and loopless, the setting of the undirected predicates.
    pub fn require_simple(&self, what: &str) -> Result<()> {
        if !self.is_symmetric() {
            return Err(Error::Precondition(format!("{what} requires a symmetric graph")));
        }
        if !self.is_loopless() {
            return Err(Error::Precondition(format!("{what} requires a loopless graph")));
        }
        Ok(())
    }

    pub fn uniform_weight(&self) -> UniformWeightReport {
        let mut violations = Vec::new();
        let mut common: Option<Rational> = None;
        for i in 0..self.n {
            for j in 0..self.n {
                let w = self.weight_ix(i, j);
                if i == j {
                    if !w.is_zero() {
                        violations.push(UniformViolation::new(i, j, w, ViolationKind::Loop));
                    }
                    continue;
                }
                if w != self.weight_ix(j, i) {
                    violations.push(UniformViolation::new(i, j, w, ViolationKind::Asymmetric));
                }
                if w.is_zero() {
                    continue;
                }
                match &common {
                    None => common = Some(w.clone()),
                    Some(c) if c != w => {
                        violations.push(UniformViolation::new(i, j, w, ViolationKind::Unequal));
                    }
                    Some(_) => {}
                }
            }
        }
        if common.is_none() {
            violations.push(UniformViolation {
                pair: (VertexId::new(0), VertexId::new(0)),
                weight: Rational::zero(),
                kind: ViolationKind::NoPositiveWeight,
            });
        }
        let is_uniform = violations.is_empty();
        UniformWeightReport { is_uniform, w: if is_uniform { common } else { None }, violations }
    }

    /// First `(a, b, c)` in lexicographic order with `w(a,b) w(b,c) w(a,c) > 0`.
    /// The vertices need not be distinct, so a loop gives `(a, a, a)`.
    pub fn directed_triangle(&self) -> Option<(VertexId, VertexId, VertexId)> {
        for a in self.vertices() {
            for &b in self.out_neighbors(a) {
                for &c in self.out_neighbors(b) {
                    if self.is_edge(a, c) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn has_directed_triangle(&self) -> bool {
        self.directed_triangle().is_some()
    }

    pub fn is_strongly_connected(&self) -> bool {
        let reach = |forward: bool| {
            let mut seen = vec![false; self.n];
            let mut queue = VecDeque::from([0usize]);
            seen[0] = true;
            while let Some(v) = queue.pop_front() {
                let next = if forward { &self.out_neighbors[v] } else { &self.in_neighbors[v] };
                for u in next {
                    if !seen[u.index()] {
                        seen[u.index()] = true;
                        queue.push_back(u.index());
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        reach(true) && reach(false)
    }

    /// First kite `(a, b, c; d)` over ordered 4-tuples of distinct vertices:
    /// `abc` a triangle and `d` adjacent to `a` and to neither `b` nor `c`.
    pub fn find_kite(&self) -> Result<Option<Kite>> {
        self.require_simple("kite search")?;
        let n = self.n;
        let adj = |i: usize, j: usize| !self.weight_ix(i, j).is_zero();
        for a in 0..n {
            for b in 0..n {
                if b == a || !adj(a, b) {
                    continue;
                }
                for c in 0..n {
                    if c == a || c == b || !adj(a, c) || !adj(b, c) {
                        continue;
                    }
                    for d in 0..n {
                        if d == a || d == b || d == c {
                            continue;
                        }
                        if adj(a, d) && !adj(b, d) && !adj(c, d) {
                            return Ok(Some(Kite::new(a, b, c, d)));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_kite(&self, kite: &Kite) -> bool {
        let [a, b, c, d] = kite.indices();
        let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
        let in_range = [a, b, c, d].iter().all(|&v| v < self.n);
        if !distinct || !in_range {
            return false;
        }
        let adj = |i: usize, j: usize| !self.weight_ix(i, j).is_zero() && !self.weight_ix(j, i).is_zero();
        let non = |i: usize, j: usize| self.weight_ix(i, j).is_zero() && self.weight_ix(j, i).is_zero();
        adj(a, b) && adj(b, c) && adj(a, c) && adj(a, d) && non(b, d) && non(c, d)
    }

    /// Common out-degree of the positive edge set, if every vertex shares it.
    pub fn regularity(&self) -> Option<usize> {
        let d = self.out_neighbors[0].len();
        self.out_neighbors.iter().all(|nb| nb.len() == d).then_some(d)
    }

    /// Common number of triangles through each edge; `None` if it varies or
    /// there are no edges.
    pub fn triangles_per_edge(&self) -> Result<Option<usize>> {
        self.require_simple("triangle counting")?;
        let mut common = None;
        for a in self.vertices() {
            for &b in self.out_neighbors(a) {
                let t = self.out_neighbors(a).iter().filter(|&&v| self.is_edge(b, v)).count();
                match common {
                    None => common = Some(t),
                    Some(c) if c != t => return Ok(None),
                    _ => {}
                }
            }
        }
        Ok(common)
    }

    /// Splits the vertices into non-adjacency classes. The graph is complete
    /// multipartite exactly when non-adjacency is transitive, which here means
    /// every class is independent and every cross-class pair is an edge.
    pub fn classify_multipartite(&self) -> Result<MultipartiteClassification> {
        self.require_simple("multipartite classification")?;
        let n = self.n;
        let mut class_of = vec![usize::MAX; n];
        let mut parts: Vec<Vec<VertexId>> = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let id = parts.len();
            let members: Vec<usize> = (0..n).filter(|&b| class_of[b] == usize::MAX && self.weight_ix(a, b).is_zero()).collect();
            for &b in &members {
                class_of[b] = id;
            }
            parts.push(members.into_iter().map(VertexId::new).collect());
        }
        let consistent = (0..n).all(|i| {
            (0..n).all(|j| {
                let same = class_of[i] == class_of[j];
                same == self.weight_ix(i, j).is_zero()
            })
        });
        if !consistent {
            return Ok(MultipartiteClassification::not_multipartite());
        }
        let size = parts[0].len();
        let r = parts.iter().all(|p| p.len() == size).then_some(size);
        Ok(MultipartiteClassification {
            is_complete_multipartite: true,
            q: Some(parts.len()),
            r,
            parts: Some(parts),
        })
    }

    /// Maps each symbol to the index of its part.
    pub fn block_projection(&self, classification: &MultipartiteClassification, x: &Word) -> Result<Word> {
        self.check_word(x)?;
        let parts = classification
            .parts
            .as_ref()
            .ok_or_else(|| Error::Precondition("block projection needs a complete multipartite classification".into()))?;
        let mut part_of = vec![usize::MAX; self.n];
        for (p, members) in parts.iter().enumerate() {
            for v in members {
                if v.index() >= self.n {
                    return Err(Error::VertexOutOfRange { vertex: v.index(), vertex_count: self.n });
                }
                part_of[v.index()] = p;
            }
        }
        if part_of.contains(&usize::MAX) {
            return Err(Error::Precondition("classification does not cover every vertex".into()));
        }
        Ok(Word::from_indices(x.symbols().iter().map(|v| part_of[v.index()])))
    }

    /// Every word of length `len` whose consecutive pairs all have positive
    /// weight, in lexicographic order.
    pub fn positive_words(&self, len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(len);
        self.walks_from(len, &mut cur, &mut |w| out.push(Word::new(w.to_vec())));
        out
    }

    /// Visits, in lexicographic order, every positive walk of `len` symbols
    /// extending `prefix`.
    pub fn walks_from(&self, len: usize, prefix: &mut Vec<VertexId>, visit: &mut impl FnMut(&[VertexId])) {
        if prefix.len() >= len {
            visit(prefix);
            return;
        }
        match prefix.last() {
            None => {
                for v in 0..self.n {
                    prefix.push(VertexId::new(v));
                    self.walks_from(len, prefix, visit);
                    prefix.pop();
                }
            }
            Some(&last) => {
                for &v in self.out_neighbors(last) {
                    prefix.push(v);
                    self.walks_from(len, prefix, visit);
                    prefix.pop();
                }
            }
        }
    }

    /// Number of positive walks with `len` symbols, saturating.
    pub fn count_positive_words(&self, len: usize) -> u128 {
        if len == 0 {
            return 1;
        }
        let mut counts = vec![1u128; self.n];
        for _ in 1..len {
            let mut next = vec![0u128; self.n];
            for (slot, outs) in next.iter_mut().zip(&self.out_neighbors) {
                for u in outs {
                    *slot = slot.saturating_add(counts[u.index()]);
                }
            }
            counts = next;
        }
        counts.into_iter().fold(0u128, |a, b| a.saturating_add(b))
    }

    pub fn to_file(&self) -> GraphFile {
        let mut weights = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let w = self.weight_ix(i, j);
                if !w.is_zero() {
                    weights.push((i, j, rational::format(w)));
                }
            }
        }
        GraphFile { vertices: self.n, weights }
    }

    pub fn from_file(file: &GraphFile) -> Result<Self> {
        let entries = file
            .weights
            .iter()
            .map(|(i, j, w)| Ok((*i, *j, rational::parse(w)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_entries(file.vertices, &entries)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_file(&serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("graph file serializes")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// `{"vertices": q, "weights": [[i, j, "p/q"], ...]}`; omitted pairs weigh zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: usize,
    #[serde(default)]
    pub weights: Vec<(usize, usize, String)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Loop,
    Asymmetric,
    Unequal,
    NoPositiveWeight,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformViolation {
    pub pair: (VertexId, VertexId),
    #[serde(with = "crate::rational::serde_str")]
    pub weight: Rational,
    pub kind: ViolationKind,
}

impl UniformViolation {
    fn new(i: usize, j: usize, w: &Rational, kind: ViolationKind) -> Self {
        UniformViolation { pair: (VertexId::new(i), VertexId::new(j)), weight: w.clone(), kind }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformWeightReport {
    pub is_uniform: bool,
    #[serde(with = "crate::rational::serde_opt")]
    pub w: Option<Rational>,
    pub violations: Vec<UniformViolation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Kite {
    pub a: VertexId,
    pub b: VertexId,
    pub c: VertexId,
    pub d: VertexId,
}

impl Kite {
    pub fn new(a: usize, b: usize, c: usize, d: usize) -> Self {
        Kite { a: VertexId::new(a), b: VertexId::new(b), c: VertexId::new(c), d: VertexId::new(d) }
    }

    pub fn indices(&self) -> [usize; 4] {
        [self.a.index(), self.b.index(), self.c.index(), self.d.index()]
    }
}

impl fmt::Display for Kite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}{}{};{})", self.a, self.b, self.c, self.d)
    }
}

/// Parts are ordered by their smallest vertex. `r` is `None` when the parts
/// have unequal sizes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultipartiteClassification {
    pub is_complete_multipartite: bool,
    pub parts: Option<Vec<Vec<VertexId>>>,
    pub q: Option<usize>,
    pub r: Option<usize>,
}

impl MultipartiteClassification {
    fn not_multipartite() -> Self {
        MultipartiteClassification { is_complete_multipartite: false, parts: None, q: None, r: None }
    }
}
