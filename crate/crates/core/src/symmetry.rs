//! Weight-preserving vertex permutations, used to skip words that are images
//! of earlier words under a graph automorphism. Every building count is
//! invariant under such a relabeling.

use crate::graph::{VertexId, WeightedGraph};

/// Searches stop and fall back to the trivial group beyond this many.
pub const AUTOMORPHISM_LIMIT: usize = 50_000;

#[derive(Debug, Clone)]
pub struct Automorphisms {
    maps: Vec<Vec<u32>>,
}

impl Automorphisms {
    pub fn trivial(n: usize) -> Self {
        Automorphisms { maps: vec![(0..n as u32).collect()] }
    }

    /// All permutations `p` with `w(p(i), p(j)) = w(i, j)` for every pair.
    pub fn of(g: &WeightedGraph) -> Self {
        let n = g.vertex_count();
        let mut maps = Vec::new();
        let mut image = vec![u32::MAX; n];
        let mut used = vec![false; n];
        if search(g, 0, &mut image, &mut used, &mut maps) {
            Automorphisms { maps }
        } else {
            Self::trivial(n)
        }
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.maps.len() <= 1
    }

    pub fn apply(&self, k: usize, x: &[VertexId]) -> Vec<VertexId> {
        x.iter().map(|v| VertexId(self.maps[k][v.index()])).collect()
    }

    /// True when no automorphism maps `x` to a lexicographically smaller word.
    pub fn is_canonical(&self, x: &[VertexId]) -> bool {
        self.maps.iter().all(|m| {
            for v in x {
                let img = m[v.index()];
                match img.cmp(&v.0) {
                    std::cmp::Ordering::Less => return false,
                    std::cmp::Ordering::Greater => return true,
                    std::cmp::Ordering::Equal => {}
                }
            }
            true
        })
    }
}

fn search(g: &WeightedGraph, i: usize, image: &mut [u32], used: &mut [bool], out: &mut Vec<Vec<u32>>) -> bool {
    let n = g.vertex_count();
    if i == n {
        out.push(image.to_vec());
        return out.len() <= AUTOMORPHISM_LIMIT;
    }
    for cand in 0..n {
        if used[cand] {
            continue;
        }
        let ok = (0..=i).all(|j| {
            let pj = if j == i { cand } else { image[j] as usize };
            g.weight_ix(i, j) == g.weight_ix(cand, pj) && g.weight_ix(j, i) == g.weight_ix(pj, cand)
        });
        if !ok {
            continue;
        }
        image[i] = cand as u32;
        used[cand] = true;
        let keep_going = search(g, i + 1, image, used, out);
        used[cand] = false;
        image[i] = u32::MAX;
        if !keep_going {
            return false;
        }
    }
    true
}
