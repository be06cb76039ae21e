//! {-1,0,1} null bases from a maximum matching, and the null-space support.
//!
//! Given a maximum matching `M` of a forest `F`, the alternating digraph `D`
//! has an arc `x -> y` whenever `x v` is a non-matching edge and `v y` is a
//! matching edge. A directed path of length `d` in `D` is an `M`-alternating
//! path of length `2d` in `F`. For each unsaturated vertex `u`, the vector
//! that is `+1` on vertices at even depth of a breadth-first search from `u`
//! in `D` and `-1` on odd depth lies in the null space, and these vectors
//! form a basis.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::forest::Forest;
use crate::matching::{has_augmenting_path, Matching};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `Plus` for even depth, `Minus` for odd.
    pub fn from_parity(depth: usize) -> Self {
        if depth.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn from_value(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A {-1,0,1} vector stored as its nonzero entries, ascending by vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVector {
    entries: Vec<(usize, Sign)>,
}

impl SparseVector {
    /// Sorts `entries` and rejects repeated vertices.
    pub fn new(mut entries: Vec<(usize, Sign)>) -> Result<Self> {
        entries.sort_unstable_by_key(|&(v, _)| v);
        if let Some(w) = entries.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::Internal(format!("vertex {} repeated", w[0].0)));
        }
        Ok(Self { entries })
    }

    pub(crate) fn from_sorted(entries: Vec<(usize, Sign)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        Self { entries }
    }

    pub fn unit(v: usize) -> Self {
        Self {
            entries: vec![(v, Sign::Plus)],
        }
    }

    pub fn entries(&self) -> &[(usize, Sign)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Entry at `v` as -1, 0 or 1.
    pub fn get(&self, v: usize) -> i64 {
        self.entries
            .binary_search_by_key(&v, |&(w, _)| w)
            .map_or(0, |i| self.entries[i].1.value())
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|&(v, _)| v)
    }

    /// Dense copy of length `n` in any numeric scalar type.
    pub fn to_dense<T>(&self, n: usize) -> Vec<T>
    where
        T: Zero + One + Clone + std::ops::Neg<Output = T>,
    {
        let mut out = vec![T::zero(); n];
        for &(v, s) in &self.entries {
            out[v] = match s {
                Sign::Plus => T::one(),
                Sign::Minus => -T::one(),
            };
        }
        out
    }
}

impl fmt::Display for SparseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(v, s)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{v}", s.symbol())?;
        }
        Ok(())
    }
}

/// Basis vectors, each tagged with its anchor vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NullBasis {
    vectors: Vec<(usize, SparseVector)>,
}

impl NullBasis {
    pub fn new(vectors: Vec<(usize, SparseVector)>) -> Self {
        Self { vectors }
    }

    pub fn vectors(&self) -> &[(usize, SparseVector)] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn anchors(&self) -> impl Iterator<Item = usize> + '_ {
        self.vectors.iter().map(|(u, _)| *u)
    }

    pub fn total_nnz(&self) -> usize {
        self.vectors.iter().map(|(_, b)| b.nnz()).sum()
    }

    /// Stable sort by nonzero count, ties by anchor.
    pub fn sort_by_nnz(&mut self) {
        self.vectors.sort_by_key(|(u, b)| (b.nnz(), *u));
    }
}

/// The alternating digraph of a forest and a matching, in compressed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AltDigraph {
    offsets: Vec<usize>,
    heads: Vec<usize>,
}

impl AltDigraph {
    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn arc_count(&self) -> usize {
        self.heads.len()
    }

    /// Heads of arcs leaving `x`, ascending.
    pub fn out_arcs(&self, x: usize) -> &[usize] {
        &self.heads[self.offsets[x]..self.offsets[x + 1]]
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |x| self.out_arcs(x).iter().map(move |&y| (x, y)))
    }
}

/// Builds the alternating digraph in O(n).
///
/// For every saturated `v` with mate `y`, adds `x -> y` for each other
/// neighbor `x` of `v`. Heads are visited in ascending order so every
/// out-list is born sorted.
pub fn build_alt_digraph(f: &Forest, m: &Matching) -> AltDigraph {
    let n = f.vertex_count();
    let mut offsets = vec![0usize; n + 1];
    let arcs_into = |y: usize| {
        m.mate(y)
            .into_iter()
            .flat_map(move |v| f.neighbors(v).iter().copied().filter(move |&x| x != y))
    };
    for y in 0..n {
        for x in arcs_into(y) {
            offsets[x + 1] += 1;
        }
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let mut fill = offsets.clone();
    let mut heads = vec![0usize; offsets[n]];
    for y in 0..n {
        for x in arcs_into(y) {
            heads[fill[x]] = y;
            fill[x] += 1;
        }
    }
    AltDigraph { offsets, heads }
}

/// As [`build_alt_digraph`], but first certifies that `m` is maximum.
pub fn build_alt_digraph_checked(f: &Forest, m: &Matching) -> Result<AltDigraph> {
    if has_augmenting_path(f, m) {
        return Err(Error::NotMaximum);
    }
    Ok(build_alt_digraph(f, m))
}

/// Breadth-first layers from `u` in `d`, as signed entries sorted by vertex.
///
/// `d` is acyclic and comes from a forest, so no vertex is reached twice and
/// no visited set is needed; the cost is proportional to the output.
fn signed_reach(d: &AltDigraph, u: usize) -> SparseVector {
    let mut entries = vec![(u, Sign::Plus)];
    let mut start = 0;
    let mut depth = 0;
    while start < entries.len() {
        let end = entries.len();
        depth += 1;
        let sign = Sign::from_parity(depth);
        for i in start..end {
            let x = entries[i].0;
            for &y in d.out_arcs(x) {
                entries.push((y, sign));
            }
        }
        start = end;
    }
    entries.sort_unstable_by_key(|&(v, _)| v);
    SparseVector::from_sorted(entries)
}

/// The {-1,0,1} null basis determined by a maximum matching `m`: one vector
/// per unsaturated vertex, in ascending anchor order. Each vector is `+1` at
/// its anchor and zero at every other anchor.
pub fn alternating_basis(f: &Forest, m: &Matching) -> NullBasis {
    let d = build_alt_digraph(f, m);
    basis_from_digraph(&d, m)
}

pub(crate) fn basis_from_digraph(d: &AltDigraph, m: &Matching) -> NullBasis {
    NullBasis::new(m.unsaturated().map(|u| (u, signed_reach(d, u))).collect())
}

/// Membership mask of the support: vertices reachable in `D` from any
/// unsaturated vertex. One multi-source search, O(n).
pub(crate) fn support_mask(f: &Forest, m: &Matching) -> Vec<bool> {
    let d = build_alt_digraph(f, m);
    let mut seen = vec![false; f.vertex_count()];
    let mut stack: Vec<usize> = m.unsaturated().collect();
    for &u in &stack {
        seen[u] = true;
    }
    while let Some(x) = stack.pop() {
        for &y in d.out_arcs(x) {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

/// Vertices at which some null vector is nonzero, ascending.
pub fn support_set(f: &Forest, m: &Matching) -> Vec<usize> {
    support_mask(f, m)
        .iter()
        .enumerate()
        .filter_map(|(v, &s)| s.then_some(v))
        .collect()
}
