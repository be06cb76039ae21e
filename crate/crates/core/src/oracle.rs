//! Exact brute-force ground truth for small forests.
//!
//! Nothing here is fast. Every routine works over an exact field scalar
//! (no floating point), enumerates supports explicitly, and decides linear
//! dependence by comparing ranks. Use it to certify the combinatorial
//! algorithms on instances of a dozen vertices or so.

use std::fmt;
use std::ops::Neg;

use itertools::Itertools;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

use crate::error::{Error, Result};
use crate::forest::{Forest, RootedForest};
use crate::support::NullBasis;

/// Default vertex limit for [`support_oracle`].
pub const SUPPORT_LIMIT: usize = 64;

/// Vertex limit for routines that enumerate vertex subsets.
pub const SUBSET_LIMIT: usize = 12;

/// A scalar with exact field arithmetic: zero tests are trustworthy.
pub trait ExactField: Clone + Num + Neg<Output = Self> {}

impl<T> ExactField for Ratio<T> where T: Clone + Integer + Signed {}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: ExactField> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Matrix whose rows are `rows`; all must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<T>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    /// Keeps the listed rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    /// Appends one row.
    pub fn with_row(&self, row: &[T]) -> Self {
        assert_eq!(row.len(), self.cols);
        let mut data = self.data.clone();
        data.extend(row.iter().cloned());
        Self {
            rows: self.rows + 1,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = T::one() / self.get(r, c).clone();
            for j in c..self.cols {
                let v = self.get(r, j).clone() * inv.clone();
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in c..self.cols {
                    let v = self.get(i, j).clone() - factor.clone() * self.get(r, j).clone();
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().reduce().len()
    }

    /// `cols - rank`.
    pub fn null_dimension(&self) -> usize {
        self.cols - self.rank()
    }

    /// A basis of the right null space, one vector per free column.
    pub fn null_space_basis(&self) -> Vec<Vec<T>> {
        let mut rref = self.clone();
        let pivots = rref.reduce();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut z = vec![T::zero(); self.cols];
                z[free] = T::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    z[pc] = -rref.get(row, free).clone();
                }
                z
            })
            .collect()
    }

    /// `self * z`.
    pub fn mul_vec(&self, z: &[T]) -> Vec<T> {
        assert_eq!(z.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(z)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }
}

/// Symmetric 0/1 adjacency matrix of `f`.
pub fn adjacency_matrix<T: ExactField>(f: &Forest) -> DenseMatrix<T> {
    let n = f.vertex_count();
    let mut a = DenseMatrix::zeros(n, n);
    for &(u, v) in f.edges() {
        a.set(u, v, T::one());
        a.set(v, u, T::one());
    }
    a
}

/// Null-space dimension by exact elimination.
pub fn null_dimension<T: ExactField>(a: &DenseMatrix<T>) -> usize {
    a.null_dimension()
}

fn check_limit(f: &Forest, limit: usize) -> Result<()> {
    match f.vertex_count() {
        n if n > limit => Err(Error::SizeLimit { n, limit }),
        _ => Ok(()),
    }
}

/// Vertices at which some null vector is nonzero: `x` qualifies iff adding
/// the constraint `z(x) = 0` lowers the null-space dimension.
pub fn support_oracle(f: &Forest) -> Result<Vec<usize>> {
    support_oracle_with_limit(f, SUPPORT_LIMIT)
}

pub fn support_oracle_with_limit(f: &Forest, limit: usize) -> Result<Vec<usize>> {
    check_limit(f, limit)?;
    let n = f.vertex_count();
    let a: DenseMatrix<crate::Rational> = adjacency_matrix(f);
    let base = a.null_dimension();
    Ok((0..n)
        .filter(|&x| {
            let mut e = vec![crate::Rational::from_integer(0.into()); n];
            e[x] = crate::Rational::from_integer(1.into());
            a.with_row(&e).null_dimension() < base
        })
        .collect())
}

/// Fewest nonzeros of a vector `z` with `a z = 0`, `z(x) != 0` and support
/// inside `allowed`; `None` if no such vector exists.
///
/// Candidate supports `T` are tried by increasing size. Such a `z` with
/// support inside `T` exists iff column `x` lies in the span of the other
/// columns of `T`, i.e. iff dropping `x` leaves the column rank unchanged.
/// The first feasible `T` is then exactly the support of the minimizer.
pub fn min_support_size<T: ExactField>(
    a: &DenseMatrix<T>,
    x: usize,
    allowed: &[bool],
) -> Option<usize> {
    if !allowed[x] {
        return None;
    }
    let others: Vec<usize> = (0..a.cols()).filter(|&v| v != x && allowed[v]).collect();
    for k in 0..=others.len() {
        for rest in others.iter().copied().combinations(k) {
            let without = a.select_columns(&rest);
            let mut with = rest.clone();
            with.push(x);
            if a.select_columns(&with).rank() == without.rank() {
                return Some(k + 1);
            }
        }
    }
    None
}

/// Minimum number of nonzeros among null vectors of `f` nonzero at `x`.
pub fn min_weight(f: &Forest, x: usize) -> Result<usize> {
    check_limit(f, SUBSET_LIMIT)?;
    let n = f.vertex_count();
    if x >= n {
        return Err(Error::VertexOutOfRange { vertex: x, n });
    }
    let a: DenseMatrix<crate::Rational> = adjacency_matrix(f);
    min_support_size(&a, x, &vec![true; n]).ok_or(Error::NotInSupport(x))
}

/// Downward weights of a rooted support forest, from their definition.
///
/// For `x` in `S` this is the fewest nonzeros of a null vector of the
/// subtree below `x` that vanishes off `S` and is nonzero at `x`; for `x` in
/// `R` it is the minimum over the children. `in_s` flags `S`-vertices.
pub fn downward_weights(g: &RootedForest, in_s: &[bool]) -> Result<Vec<usize>> {
    let n = g.base().vertex_count();
    let mut weights = vec![0usize; n];
    for &x in g.postorder() {
        if !in_s[x] {
            weights[x] = g
                .children(x)
                .map(|c| weights[c])
                .min()
                .ok_or_else(|| Error::Internal(format!("core vertex {x} has no children")))?;
            continue;
        }
        let mut subtree = vec![x];
        let mut i = 0;
        while i < subtree.len() {
            let v = subtree[i];
            subtree.extend(g.children(v));
            i += 1;
        }
        if subtree.len() > SUBSET_LIMIT {
            return Err(Error::SizeLimit {
                n: subtree.len(),
                limit: SUBSET_LIMIT,
            });
        }
        subtree.sort_unstable();
        let pos = |v: usize| subtree.binary_search(&v).unwrap();
        let edges = subtree
            .iter()
            .filter(|&&v| v != x)
            .map(|&v| (pos(v), pos(g.parent(v).unwrap())));
        let sub = Forest::new(subtree.len(), edges)?;
        let a: DenseMatrix<crate::Rational> = adjacency_matrix(&sub);
        let allowed: Vec<bool> = subtree.iter().map(|&v| in_s[v]).collect();
        weights[x] = min_support_size(&a, pos(x), &allowed)
            .ok_or_else(|| Error::Internal(format!("no null vector below {x}")))?;
    }
    Ok(weights)
}

/// Total nonzeros of a sparsest null basis, by the greedy construction:
/// repeatedly add a sparsest null vector outside the span of those chosen so
/// far, finding it by enumerating supports in increasing size.
///
/// A null vector supported in `T` and outside `span(B)` exists iff
/// `dim ker A[:, T]` exceeds the dimension of the part of `span(B)` that
/// vanishes off `T`, which is `|B| - rank B[V - T, :]`.
pub fn sparsest_total_oracle(f: &Forest) -> Result<usize> {
    check_limit(f, SUBSET_LIMIT)?;
    let n = f.vertex_count();
    let a: DenseMatrix<crate::Rational> = adjacency_matrix(f);
    let target = a.null_dimension();
    // Chosen vectors, stored as columns of an n x |B| matrix built on demand.
    let mut chosen: Vec<Vec<crate::Rational>> = Vec::new();
    let mut total = 0;
    let mut k = 1;
    while chosen.len() < target {
        let found = (0..n).combinations(k).find_map(|support| {
            let null_dim = support.len() - a.select_columns(&support).rank();
            let outside: Vec<usize> = (0..n).filter(|v| !support.contains(v)).collect();
            let spanned = chosen.len() - column_matrix(n, &chosen).select_rows(&outside).rank();
            if null_dim <= spanned {
                return None;
            }
            let current_rank = column_matrix(n, &chosen).rank();
            a.select_columns(&support)
                .null_space_basis()
                .into_iter()
                .map(|z| {
                    let mut full = vec![crate::Rational::from_integer(0.into()); n];
                    for (&v, value) in support.iter().zip(z) {
                        full[v] = value;
                    }
                    full
                })
                .find(|z| {
                    let mut trial = chosen.clone();
                    trial.push(z.clone());
                    column_matrix(n, &trial).rank() > current_rank
                })
        });
        match found {
            Some(z) => {
                total += k;
                chosen.push(z);
            }
            None => k += 1,
        }
        if k > n {
            return Err(Error::Internal("greedy basis ran out of supports".into()));
        }
    }
    Ok(total)
}

fn column_matrix<T: ExactField>(n: usize, columns: &[Vec<T>]) -> DenseMatrix<T> {
    DenseMatrix::from_fn(n, columns.len(), |i, j| columns[j][i].clone())
}

/// Size of a maximum matching by enumerating edge subsets.
pub fn brute_force_matching_size(f: &Forest) -> Result<usize> {
    check_limit(f, 2 * SUBSET_LIMIT)?;
    let edges = f.edges();
    let mut best = 0;
    for mask in 0u32..(1u32 << edges.len()) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let mut used = 0u64;
        let disjoint = edges.iter().enumerate().all(|(i, &(u, v))| {
            if mask >> i & 1 == 0 {
                return true;
            }
            let bits = 1u64 << u | 1u64 << v;
            let ok = used & bits == 0;
            used |= bits;
            ok
        });
        if disjoint {
            best = size;
        }
    }
    Ok(best)
}

/// Outcome of one verification check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Pass/fail list produced by [`verify_basis`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &'static str, passed: bool, detail: String) {
        self.checks.push(Check {
            name,
            passed,
            detail,
        });
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{tag} {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

/// Checks that `b` is a {-1,0,1} null basis of `f`.
pub fn verify_basis(f: &Forest, b: &NullBasis) -> VerificationReport {
    let vectors: Vec<Vec<(usize, i64)>> = b
        .vectors()
        .iter()
        .map(|(_, v)| v.entries().iter().map(|&(x, s)| (x, s.value())).collect())
        .collect();
    verify_vectors(f, &vectors)
}

/// Like [`verify_basis`] for raw integer vectors given as `(vertex, value)`
/// pairs, as read from a file.
///
/// Checks, in order: `entries` (values in {-1,1}, vertices in range and not
/// repeated), `null-membership` (every neighborhood sums to zero), `count`
/// (equals the nullity) and `independence` (exact rank equals the count).
pub fn verify_vectors(f: &Forest, vectors: &[Vec<(usize, i64)>]) -> VerificationReport {
    let n = f.vertex_count();
    let mut report = VerificationReport::default();

    let bad_entry = vectors.iter().enumerate().find_map(|(i, v)| {
        let mut seen = std::collections::HashSet::new();
        v.iter().find_map(|&(x, value)| {
            if x >= n {
                Some(format!("vector {i}: vertex {x} out of range"))
            } else if value != 1 && value != -1 {
                Some(format!("vector {i}: value {value} at vertex {x}"))
            } else if !seen.insert(x) {
                Some(format!("vector {i}: vertex {x} repeated"))
            } else {
                None
            }
        })
    });
    let entries_ok = bad_entry.is_none();
    report.push(
        "entries",
        entries_ok,
        bad_entry.unwrap_or_else(|| "all nonzeros are -1 or +1".into()),
    );

    let mut failure = None;
    if entries_ok {
        let mut dense = vec![0i64; n];
        'outer: for (i, v) in vectors.iter().enumerate() {
            for &(x, value) in v {
                dense[x] = value;
            }
            for x in 0..n {
                let sum: i64 = f.neighbors(x).iter().map(|&y| dense[y]).sum();
                if sum != 0 {
                    failure = Some(format!("vector {i}: neighborhood of {x} sums to {sum}"));
                    break 'outer;
                }
            }
            for &(x, _) in v {
                dense[x] = 0;
            }
        }
    } else {
        failure = Some("skipped, entries invalid".into());
    }
    report.push(
        "null-membership",
        failure.is_none(),
        failure.unwrap_or_else(|| "every neighborhood sums to zero".into()),
    );

    let expected = crate::matching::nullity(f);
    report.push(
        "count",
        vectors.len() == expected,
        format!("{} vectors, nullity {expected}", vectors.len()),
    );

    if entries_ok {
        let columns: Vec<Vec<crate::Rational>> = vectors
            .iter()
            .map(|v| {
                let mut col = vec![crate::Rational::from_integer(0.into()); n];
                for &(x, value) in v {
                    col[x] = crate::Rational::from_integer(value.into());
                }
                col
            })
            .collect();
        let rank = if vectors.is_empty() {
            0
        } else {
            column_matrix(n, &columns).rank()
        };
        report.push(
            "independence",
            rank == vectors.len(),
            format!("rank {rank} of {} vectors", vectors.len()),
        );
    } else {
        report.push("independence", false, "skipped, entries invalid".into());
    }
    report
}
