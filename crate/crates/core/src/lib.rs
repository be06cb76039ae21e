//! Sparse null bases of forests.
//!
//! The null space of a forest is the kernel of its 0/1 adjacency matrix.
//! This crate computes, for any forest given as an edge list:
//!
//! * the set of vertices at which some null vector is nonzero ([`support_set`]),
//! * a {-1,0,1} null basis derived from any maximum matching ([`alternating_basis`]),
//! * a sparsest {-1,0,1} null basis in time proportional to its number of
//!   nonzeros ([`sparsest_basis`]), and that number alone in linear time
//!   ([`sparsest_nnz_count`]).
//!
//! The [`oracle`] module holds exact-arithmetic brute-force routines used to
//! certify all of the above on small instances. Its linear algebra is generic
//! over any exact field scalar; [`RationalMatrix`] fixes it to big rationals.

pub mod error;
pub mod forest;
pub mod format;
pub mod generators;
pub mod matching;
pub mod oracle;
pub mod sparsest;
pub mod support;

pub mod cli;

pub use error::{Error, Result};
pub use forest::{components, parse_forest, root_at, Forest, RootedForest};
pub use generators::{generate, Family, GenSpec};
pub use matching::{has_augmenting_path, maximum_matching, nullity, Matching};
pub use oracle::{DenseMatrix, ExactField, VerificationReport};
pub use sparsest::{
    beta_matching, build_support_forest, compute_beta, sparsest_basis, sparsest_nnz_count,
    BetaAnnotation, BetaMatching, SupportForest,
};
pub use support::{
    alternating_basis, build_alt_digraph, support_set, AltDigraph, NullBasis, Sign, SparseVector,
};

/// Exact rational scalar used by the oracle.
pub type Rational = num_rational::BigRational;

/// Dense matrix over arbitrary-precision rationals.
pub type RationalMatrix = DenseMatrix<Rational>;

/// Dense matrix over `i64` rationals; faster, exact while entries stay small.
pub type Rational64Matrix = DenseMatrix<num_rational::Rational64>;
