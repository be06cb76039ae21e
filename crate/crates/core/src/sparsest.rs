//! Sparsest {-1,0,1} null bases.
//!
//! Pipeline, all linear in `n` except the final expansion which is linear in
//! the output:
//!
//! 1. `S` = support of the null space, from any maximum matching.
//! 2. `G` = edges of `F` with an endpoint in `S` (every such edge joins `S`
//!    to `R = V(G) - S`), each component rooted at its smallest `S`-vertex.
//! 3. `beta_down` bottom-up and `beta` top-down over `G`:
//!
//!    ```text
//!    beta_down(x) = min_c beta_down(c)         x in R
//!                 = 1 + sum_c beta_down(c)     x in S
//!    beta(x)      = min(beta_down(x), beta(parent) - beta_down(x))   x in R
//!                 = beta_down(x) + beta(parent)                       x in S
//!    ```
//!
//!    with `beta(parent) = 0` at roots.
//! 4. Each `r` in `R` is matched to a neighbor attaining its `beta`; the
//!    result is a maximum matching of `G`.
//! 5. The alternating basis of `G` under that matching, padded with zeros,
//!    plus a unit vector per isolated vertex of `F`, is a sparsest null basis.
//!    The vector anchored at `u` has exactly `beta(u)` nonzeros.

use crate::error::{Error, Result};
use crate::forest::{component_labels, Forest, RootedForest};
use crate::matching::{maximum_matching, Matching};
use crate::support::{alternating_basis, support_mask, NullBasis, SparseVector};

const ABSENT: usize = usize::MAX;

/// The forest `G` spanned by edges meeting the support, relabelled to
/// `0..len()` in ascending order of original id.
#[derive(Clone, Debug)]
pub struct SupportForest {
    vertices: Vec<usize>,
    local: Vec<usize>,
    in_s: Vec<bool>,
    rooted: RootedForest,
}

impl SupportForest {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Original ids of the vertices of `G`, ascending.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Original id of local vertex `x`.
    pub fn global(&self, x: usize) -> usize {
        self.vertices[x]
    }

    /// Local id of original vertex `v`, if it lies in `G`.
    pub fn local(&self, v: usize) -> Option<usize> {
        self.local.get(v).copied().filter(|&x| x != ABSENT)
    }

    pub fn in_s(&self, x: usize) -> bool {
        self.in_s[x]
    }

    pub fn rooted(&self) -> &RootedForest {
        &self.rooted
    }

    pub fn forest(&self) -> &Forest {
        self.rooted.base()
    }

    /// Local ids of `R`-vertices, ascending.
    pub fn core(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&x| !self.in_s[x])
    }

    pub fn core_count(&self) -> usize {
        self.in_s.iter().filter(|&&s| !s).count()
    }
}

/// Builds `G` from `f` and its support `s` (any order).
///
/// Fails if `s` is not a stable set or some `R`-vertex is a leaf of `G`;
/// neither can happen when `s` is the true support.
pub fn build_support_forest(f: &Forest, s: &[usize]) -> Result<SupportForest> {
    let n = f.vertex_count();
    let mut mask = vec![false; n];
    for &v in s {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        mask[v] = true;
    }
    build_from_mask(f, &mask)
}

fn build_from_mask(f: &Forest, mask: &[bool]) -> Result<SupportForest> {
    let n = f.vertex_count();
    let mut local = vec![ABSENT; n];
    for &(u, v) in f.edges() {
        match (mask[u], mask[v]) {
            (true, true) => {
                return Err(Error::Internal(format!(
                    "support vertices {u} and {v} are adjacent"
                )))
            }
            (false, false) => {}
            _ => {
                local[u] = 0;
                local[v] = 0;
            }
        }
    }
    let mut vertices = Vec::new();
    for (v, slot) in local.iter_mut().enumerate() {
        if *slot != ABSENT {
            *slot = vertices.len();
            vertices.push(v);
        }
    }
    let edges: Vec<(usize, usize)> = f
        .edges()
        .iter()
        .filter(|&&(u, v)| mask[u] || mask[v])
        .map(|&(u, v)| (local[u], local[v]))
        .collect();
    let in_s: Vec<bool> = vertices.iter().map(|&v| mask[v]).collect();
    let g = Forest::from_sorted_edges(vertices.len(), edges);

    for x in 0..g.vertex_count() {
        if !in_s[x] && g.degree(x) < 2 {
            return Err(Error::Internal(format!(
                "core vertex {} is a leaf of the support forest",
                vertices[x]
            )));
        }
    }

    let labels = component_labels(&g);
    let mut roots: Vec<usize> = Vec::new();
    let mut rooted_component = vec![false; labels.iter().map(|&c| c + 1).max().unwrap_or(0)];
    for x in 0..g.vertex_count() {
        if in_s[x] && !std::mem::replace(&mut rooted_component[labels[x]], true) {
            roots.push(x);
        }
    }
    let rooted = RootedForest::new(g, &roots)?;
    Ok(SupportForest {
        vertices,
        local,
        in_s,
        rooted,
    })
}

/// `beta_down` and `beta` per local vertex of `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaAnnotation {
    beta_down: Vec<usize>,
    beta: Vec<usize>,
}

impl BetaAnnotation {
    pub fn beta_down(&self, x: usize) -> usize {
        self.beta_down[x]
    }

    pub fn beta(&self, x: usize) -> usize {
        self.beta[x]
    }

    pub fn beta_down_all(&self) -> &[usize] {
        &self.beta_down
    }

    pub fn beta_all(&self) -> &[usize] {
        &self.beta
    }
}

/// One postorder pass for `beta_down`, one reverse-postorder pass for `beta`.
pub fn compute_beta(g: &SupportForest) -> BetaAnnotation {
    let t = g.rooted();
    let len = g.len();
    let mut beta_down = vec![0usize; len];
    for &x in t.postorder() {
        beta_down[x] = if g.in_s(x) {
            1 + t.children(x).map(|c| beta_down[c]).sum::<usize>()
        } else {
            t.children(x)
                .map(|c| beta_down[c])
                .min()
                .expect("core vertices have children")
        };
    }
    let mut beta = vec![0usize; len];
    for &x in t.postorder().iter().rev() {
        let above = t.parent(x).map_or(0, |p| beta[p]);
        beta[x] = if g.in_s(x) {
            beta_down[x] + above
        } else {
            beta_down[x].min(above - beta_down[x])
        };
    }
    BetaAnnotation { beta_down, beta }
}

/// A matching of `G` pairing every `R`-vertex with one of its minimizers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaMatching {
    matching: Matching,
    minimizer: Vec<Option<usize>>,
}

impl BetaMatching {
    /// Matching over local ids of `G`.
    pub fn matching(&self) -> &Matching {
        &self.matching
    }

    /// Chosen partner of `R`-vertex `r`; `None` for `S`-vertices.
    pub fn minimizer(&self, r: usize) -> Option<usize> {
        self.minimizer[r]
    }
}

/// Picks for each `r` in `R` the smallest child `c` with
/// `beta_down(c) == beta(r)`, falling back to the parent when
/// `beta(r) == beta(parent) - beta_down(r)`.
pub fn beta_matching(g: &SupportForest, b: &BetaAnnotation) -> Result<BetaMatching> {
    let t = g.rooted();
    let mut matching = Matching::empty(g.len());
    let mut minimizer = vec![None; g.len()];
    for r in g.core() {
        let target = b.beta(r);
        let phi = t
            .children(r)
            .find(|&c| b.beta_down(c) == target)
            .or_else(|| {
                t.parent(r)
                    .filter(|&p| b.beta(p).checked_sub(b.beta_down(r)) == Some(target))
            })
            .ok_or_else(|| {
                Error::Internal(format!("no minimizer for core vertex {}", g.global(r)))
            })?;
        if matching.is_saturated(phi) {
            return Err(Error::Internal(format!(
                "vertex {} chosen by two core vertices",
                g.global(phi)
            )));
        }
        matching.pair(r, phi);
        minimizer[r] = Some(phi);
    }
    Ok(BetaMatching {
        matching,
        minimizer,
    })
}

/// Every intermediate of the sparsest-basis pipeline for one forest.
#[derive(Clone, Debug)]
pub struct SparsestPlan {
    /// Size of a maximum matching of the input forest.
    pub matching_size: usize,
    /// Support of the null space, ascending.
    pub support: Vec<usize>,
    /// Isolated vertices of the input, ascending.
    pub isolated: Vec<usize>,
    pub support_forest: SupportForest,
    pub beta: BetaAnnotation,
    pub beta_matching: BetaMatching,
}

impl SparsestPlan {
    /// Runs steps 1 to 4 of the pipeline in O(n).
    pub fn new(f: &Forest) -> Result<Self> {
        let m = maximum_matching(f);
        let mask = support_mask(f, &m);
        let support = (0..f.vertex_count()).filter(|&v| mask[v]).collect();
        let isolated = (0..f.vertex_count())
            .filter(|&v| f.degree(v) == 0)
            .collect();
        let support_forest = build_from_mask(f, &mask)?;
        let beta = compute_beta(&support_forest);
        let beta_matching = beta_matching(&support_forest, &beta)?;
        Ok(Self {
            matching_size: m.size(),
            support,
            isolated,
            support_forest,
            beta,
            beta_matching,
        })
    }

    /// Anchors of the basis vectors that live in `G` (local ids).
    pub fn local_anchors(&self) -> impl Iterator<Item = usize> + '_ {
        self.beta_matching.matching().unsaturated()
    }

    /// Total nonzeros of the sparsest basis, without building it.
    pub fn nnz(&self) -> usize {
        self.local_anchors()
            .map(|u| self.beta.beta(u))
            .sum::<usize>()
            + self.isolated.len()
    }

    pub fn nullity(&self) -> usize {
        self.local_anchors().count() + self.isolated.len()
    }

    /// Expands the basis; linear in its number of nonzeros.
    pub fn basis(&self) -> NullBasis {
        let g = &self.support_forest;
        let local = alternating_basis(g.forest(), self.beta_matching.matching());
        let mut vectors: Vec<(usize, SparseVector)> = local
            .vectors()
            .iter()
            .map(|(u, b)| {
                let entries = b.entries().iter().map(|&(x, s)| (g.global(x), s)).collect();
                (g.global(*u), SparseVector::from_sorted(entries))
            })
            .chain(self.isolated.iter().map(|&x| (x, SparseVector::unit(x))))
            .collect();
        vectors.sort_unstable_by_key(|(u, _)| *u);
        NullBasis::new(vectors)
    }
}

fn plan(f: &Forest) -> SparsestPlan {
    SparsestPlan::new(f).expect("support forest invariants hold for every forest")
}

/// A sparsest null basis of `f` with entries in {-1,0,1}, ordered by anchor.
///
/// Each vector is also sparsest among all null vectors nonzero at its anchor.
pub fn sparsest_basis(f: &Forest) -> NullBasis {
    plan(f).basis()
}

/// Number of nonzeros in any sparsest null basis of `f`, in O(n).
pub fn sparsest_nnz_count(f: &Forest) -> usize {
    plan(f).nnz()
}
