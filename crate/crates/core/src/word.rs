//! Words over a vertex alphabet and build orders (arrival permutations).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::VertexId;

/// A finite sequence of vertices. The empty word is allowed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<VertexId>);

impl Word {
    pub fn new(symbols: Vec<VertexId>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        Word(it.into_iter().map(VertexId::new).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[VertexId] {
        &self.0
    }

    /// The word with the symbol at `index` (0-based) removed.
    pub fn delete(&self, index: usize) -> Word {
        let mut v = self.0.clone();
        v.remove(index);
        Word(v)
    }

    pub fn concat(parts: &[&Word]) -> Word {
        Word(parts.iter().flat_map(|w| w.0.iter().copied()).collect())
    }

    pub fn indices(&self) -> Vec<usize> {
        self.0.iter().map(|v| v.index()).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v.index())?;
        }
        write!(f, ")")
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word::from_indices(v)
    }
}

/// A permutation `sigma` of `1..=n`: the symbol at position `sigma(t)` arrives at time `t`.
///
/// Stored 1-based, matching the usual one-line notation (`4752613`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct BuildOrder(Vec<usize>);

impl BuildOrder {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &p in &order {
            if p == 0 || p > n || seen[p - 1] {
                return Err(Error::NotAPermutation(n));
            }
            seen[p - 1] = true;
        }
        Ok(BuildOrder(order))
    }

    pub fn identity(n: usize) -> Self {
        BuildOrder((1..=n).collect())
    }

    /// Parses one-line notation for `n <= 9`, e.g. `"4752613"`.
    pub fn from_digits(s: &str) -> Result<Self> {
        let order = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::InvalidArgument(format!("bad digit {c:?} in build order")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(order)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `sigma(t)` for `t` in `1..=n`.
    pub fn position_at(&self, t: usize) -> usize {
        self.0[t - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl TryFrom<Vec<usize>> for BuildOrder {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        BuildOrder::new(v)
    }
}

impl From<BuildOrder> for Vec<usize> {
    fn from(b: BuildOrder) -> Self {
        b.0
    }
}

/// Heap's algorithm over `1..=n`, visiting every permutation once.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (1..=n).collect();
    let mut c = vec![0usize; n];
    f(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn heap_visits_every_permutation_once() {
        for n in 0..=6 {
            let mut seen = HashSet::new();
            for_each_permutation(n, |p| {
                assert!(BuildOrder::new(p.to_vec()).is_ok());
                seen.insert(p.to_vec());
            });
            let fact: usize = (1..=n).product();
            assert_eq!(seen.len(), fact);
        }
    }

    #[test]
    fn build_order_validation() {
        assert!(BuildOrder::new(vec![1, 1]).is_err());
        assert!(BuildOrder::new(vec![0, 1]).is_err());
        assert!(BuildOrder::new(vec![2, 3]).is_err());
        assert_eq!(BuildOrder::from_digits("4752613").unwrap().position_at(1), 4);
    }

    #[test]
    fn word_json_is_an_integer_array() {
        let w = Word::from_indices([0, 2, 1]);
        assert_eq!(serde_json::to_string(&w).unwrap(), "[0,2,1]");
        let back: Word = serde_json::from_str("[0,2,1]").unwrap();
        assert_eq!(back, w);
    }
}
