//! Forest representation, edge-list parsing, components and rooting.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A validated undirected forest on vertices `0..n`.
///
/// Adjacency is stored in compressed form: the neighbors of `v` are
/// `neighbors[offsets[v]..offsets[v + 1]]`, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forest {
    n: usize,
    edges: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
}

impl Forest {
    /// Builds a forest from an edge list, rejecting self-loops, duplicate
    /// edges, out-of-range endpoints and cycles.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut dsu = DisjointSets::new(n);
        let mut normalized = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            let (u, v) = w[0];
            return Err(Error::DuplicateEdge { u, v });
        }
        for &(u, v) in &normalized {
            if !dsu.union(u, v) {
                return Err(Error::Cycle { u, v });
            }
        }
        Ok(Self::from_sorted_edges(n, normalized))
    }

    /// Caller guarantees `edges` is a sorted, validated forest edge list.
    pub(crate) fn from_sorted_edges(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for &(u, v) in &edges {
            offsets[u + 1] += 1;
            offsets[v + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut neighbors = vec![0usize; 2 * edges.len()];
        // Two sweeps over the sorted edges: lower neighbors first, then higher
        // ones, so every list comes out ascending without a sort.
        for &(u, v) in &edges {
            neighbors[fill[v]] = u;
            fill[v] += 1;
        }
        for &(u, v) in &edges {
            neighbors[fill[u]] = v;
            fill[u] += 1;
        }
        let forest = Self {
            n,
            edges,
            offsets,
            neighbors,
        };
        debug_assert!((0..n).all(|v| forest.neighbors(v).windows(2).all(|w| w[0] < w[1])));
        forest
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted ascending.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Serializes in the `p forest` edge-list format.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(16 + 12 * self.edges.len());
        writeln!(out, "p forest {} {}", self.n, self.edges.len()).unwrap();
        for &(u, v) in &self.edges {
            writeln!(out, "e {u} {v}").unwrap();
        }
        out
    }
}

/// Parses the edge-list format:
///
/// ```text
/// c optional comment
/// p forest <n> <m>
/// e <u> <v>      (exactly m times, 0 <= u, v < n)
/// ```
///
/// Blank lines and lines starting with `c` are ignored anywhere.
pub fn parse_forest(text: &str) -> Result<Forest> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let tag = tokens.next().unwrap_or_default();
        let err = |msg: &str| Error::Parse {
            line: line_no,
            msg: msg.to_string(),
        };
        match (tag, header) {
            ("p", None) => {
                if tokens.next() != Some("forest") {
                    return Err(err("expected `p forest <n> <m>`"));
                }
                let n = parse_count(tokens.next(), line_no, "n")?;
                let m = parse_count(tokens.next(), line_no, "m")?;
                if tokens.next().is_some() {
                    return Err(err("trailing tokens after header"));
                }
                header = Some((n, m));
            }
            ("p", Some(_)) => return Err(err("duplicate header")),
            ("e", None) => return Err(err("edge before `p forest` header")),
            ("e", Some((n, m))) => {
                let u = parse_count(tokens.next(), line_no, "u")?;
                let v = parse_count(tokens.next(), line_no, "v")?;
                if tokens.next().is_some() {
                    return Err(err("trailing tokens after edge"));
                }
                if edges.len() == m {
                    return Err(err(&format!("more than the declared {m} edges")));
                }
                for w in [u, v] {
                    if w >= n {
                        return Err(err(&format!("vertex {w} out of range for n = {n}")));
                    }
                }
                edges.push((u, v));
            }
            _ => return Err(err(&format!("unknown line tag `{tag}`"))),
        }
    }
    let (n, m) = header.ok_or(Error::Parse {
        line: last_line,
        msg: "missing `p forest <n> <m>` header".into(),
    })?;
    if edges.len() != m {
        return Err(Error::Parse {
            line: last_line,
            msg: format!("declared {m} edges, found {}", edges.len()),
        });
    }
    Forest::new(n, edges)
}

fn parse_count(token: Option<&str>, line: usize, what: &str) -> Result<usize> {
    token
        .and_then(|t| t.parse::<usize>().ok())
        .ok_or_else(|| Error::Parse {
            line,
            msg: format!("expected non-negative integer for {what}"),
        })
}

/// Connected components, each sorted ascending, ordered by minimum vertex.
pub fn components(f: &Forest) -> Vec<Vec<usize>> {
    let label = component_labels(f);
    let count = label.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut out = vec![Vec::new(); count];
    for (v, &c) in label.iter().enumerate() {
        out[c].push(v);
    }
    out
}

/// Component index of each vertex; components are numbered in order of
/// their minimum vertex.
pub(crate) fn component_labels(f: &Forest) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let mut label = vec![UNSEEN; f.vertex_count()];
    let mut stack = Vec::new();
    let mut next = 0;
    for s in 0..f.vertex_count() {
        if label[s] != UNSEEN {
            continue;
        }
        label[s] = next;
        stack.push(s);
        while let Some(v) = stack.pop() {
            for &w in f.neighbors(v) {
                if label[w] == UNSEEN {
                    label[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    label
}

/// A forest with one chosen root per component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedForest {
    base: Forest,
    roots: Vec<usize>,
    parent: Vec<Option<usize>>,
    postorder: Vec<usize>,
}

impl RootedForest {
    /// Roots `base` at `roots`, which must contain exactly one vertex of
    /// every component.
    pub fn new(base: Forest, roots: &[usize]) -> Result<Self> {
        let n = base.vertex_count();
        let label = component_labels(&base);
        let count = label.iter().map(|&c| c + 1).max().unwrap_or(0);
        if roots.len() != count {
            return Err(Error::InvalidRoot(format!(
                "{} roots given for {count} components",
                roots.len()
            )));
        }
        let mut covered = vec![false; count];
        for &r in roots {
            if r >= n {
                return Err(Error::InvalidRoot(format!("root {r} out of range")));
            }
            if std::mem::replace(&mut covered[label[r]], true) {
                return Err(Error::InvalidRoot(format!(
                    "two roots in the component of {r}"
                )));
            }
        }

        let mut parent = vec![None; n];
        let mut postorder = Vec::with_capacity(n);
        // (vertex, index of next neighbor to examine)
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for &r in roots {
            stack.push((r, 0));
            while let Some(top) = stack.last_mut() {
                let (v, i) = *top;
                let nbrs = base.neighbors(v);
                if i == nbrs.len() {
                    postorder.push(v);
                    stack.pop();
                    continue;
                }
                top.1 += 1;
                let w = nbrs[i];
                if Some(w) != parent[v] {
                    parent[w] = Some(v);
                    stack.push((w, 0));
                }
            }
        }
        let mut roots = roots.to_vec();
        roots.sort_unstable();
        Ok(Self {
            base,
            roots,
            parent,
            postorder,
        })
    }

    pub fn base(&self) -> &Forest {
        &self.base
    }

    /// Roots in ascending order.
    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    /// Children of `v` in ascending order.
    pub fn children(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let p = self.parent[v];
        self.base
            .neighbors(v)
            .iter()
            .copied()
            .filter(move |&w| Some(w) != p)
    }

    /// Every vertex appears after all of its descendants.
    pub fn postorder(&self) -> &[usize] {
        &self.postorder
    }
}

/// Roots a copy of `f`; see [`RootedForest::new`].
pub fn root_at(f: &Forest, roots: &[usize]) -> Result<RootedForest> {
    RootedForest::new(f.clone(), roots)
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}
