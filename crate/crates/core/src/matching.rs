//! Maximum matchings of forests.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::forest::Forest;

/// A matching stored as a symmetric mate map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    mate: Vec<Option<usize>>,
    size: usize,
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Self {
            mate: vec![None; n],
            size: 0,
        }
    }

    /// Builds a matching of `f` from explicit pairs, checking that every pair
    /// is an edge and that pairs are vertex-disjoint.
    pub fn from_pairs<I>(f: &Forest, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut m = Self::empty(f.vertex_count());
        for (u, v) in pairs {
            if !f.has_edge(u, v) {
                return Err(Error::Internal(format!("{u}-{v} is not an edge")));
            }
            if m.mate[u].is_some() || m.mate[v].is_some() {
                return Err(Error::Internal(format!("{u}-{v} overlaps the matching")));
            }
            m.pair(u, v);
        }
        Ok(m)
    }

    pub(crate) fn pair(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && self.mate[u].is_none() && self.mate[v].is_none());
        self.mate[u] = Some(v);
        self.mate[v] = Some(u);
        self.size += 1;
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        self.mate[v]
    }

    pub fn is_saturated(&self, v: usize) -> bool {
        self.mate[v].is_some()
    }

    /// Number of matched edges.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn vertex_count(&self) -> usize {
        self.mate.len()
    }

    /// Matched edges as `(u, v)` with `u < v`, ascending.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.mate
            .iter()
            .enumerate()
            .filter_map(|(u, m)| m.filter(|&v| u < v).map(|v| (u, v)))
            .collect()
    }

    /// Unsaturated vertices in ascending order.
    pub fn unsaturated(&self) -> impl Iterator<Item = usize> + '_ {
        self.mate
            .iter()
            .enumerate()
            .filter(|(_, m)| m.is_none())
            .map(|(v, _)| v)
    }
}

/// Maximum matching by repeated leaf elimination.
///
/// A leaf is always matched to its only remaining neighbor; both are then
/// deleted and degrees of the neighbor's other neighbors drop. Leaves are
/// served first-in first-out, seeded in ascending id order, so the result is
/// a deterministic function of the input. Runs in O(n).
pub fn maximum_matching(f: &Forest) -> Matching {
    let n = f.vertex_count();
    let mut degree: Vec<usize> = (0..n).map(|v| f.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut m = Matching::empty(n);
    let mut leaves: VecDeque<usize> = (0..n).filter(|&v| degree[v] == 1).collect();

    while let Some(leaf) = leaves.pop_front() {
        if removed[leaf] || degree[leaf] != 1 {
            continue;
        }
        let partner = f
            .neighbors(leaf)
            .iter()
            .copied()
            .find(|&w| !removed[w])
            .expect("a leaf has one live neighbor");
        m.pair(leaf, partner);
        removed[leaf] = true;
        removed[partner] = true;
        for &w in f.neighbors(partner) {
            if removed[w] {
                continue;
            }
            degree[w] -= 1;
            if degree[w] == 1 {
                leaves.push_back(w);
            }
        }
    }
    m
}

/// Whether some `m`-augmenting path exists in `f`.
///
/// Breadth-first search from every unsaturated vertex, leaving it along a
/// non-matching edge and alternating thereafter. Quadratic in the worst case;
/// meant as a certificate check, not for production use.
pub fn has_augmenting_path(f: &Forest, m: &Matching) -> bool {
    let n = f.vertex_count();
    let mut seen = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for start in m.unsaturated() {
        // Queue holds vertices reached by an even-length alternating path,
        // from which the next step is a non-matching edge.
        seen[start] = start;
        queue.clear();
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            for &v in f.neighbors(x) {
                if m.mate(x) == Some(v) || seen[v] == start {
                    continue;
                }
                seen[v] = start;
                match m.mate(v) {
                    None => return true,
                    Some(y) if seen[y] != start => {
                        seen[y] = start;
                        queue.push_back(y);
                    }
                    Some(_) => {}
                }
            }
        }
    }
    false
}

/// Dimension of the null space: `n - 2 |M|` for a maximum matching `M`.
pub fn nullity(f: &Forest) -> usize {
    f.vertex_count() - 2 * maximum_matching(f).size()
}
