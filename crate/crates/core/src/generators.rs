//! Deterministic forest generators.
//!
//! Random choices come from SplitMix64 seeded with `GenSpec::seed`:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! return z ^ (z >> 31)                  (all arithmetic mod 2^64)
//! ```
//!
//! A uniform index below `k` is the high word of the 128-bit product
//! `next() * k`. With these two rules any implementation reproduces the same
//! forests bit for bit.

use std::fmt;
use std::str::FromStr;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::error::{Error, Result};
use crate::forest::Forest;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Random recursive tree per component.
    RandomForest,
    /// `0-1-2-...-(n-1)`.
    Path,
    /// Center 0 joined to every other vertex.
    Star,
    /// Spine `0..ceil(n/2)`, vertex `ceil(n/2) + i` hanging off spine vertex `i`.
    Caterpillar,
    /// Center 0 with legs `0-(2i+1)-(2i+2)`; for even `n` one extra leg of length one.
    Spider,
    /// Handle `0..ceil(n/2)`, remaining vertices attached to its last vertex.
    Broom,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::RandomForest,
        Family::Path,
        Family::Star,
        Family::Caterpillar,
        Family::Spider,
        Family::Broom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::RandomForest => "random-forest",
            Family::Path => "path",
            Family::Star => "star",
            Family::Caterpillar => "caterpillar",
            Family::Spider => "spider",
            Family::Broom => "broom",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown family `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    /// Only used by `RandomForest`.
    pub components: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(family: Family, n: usize) -> Self {
        Self {
            family,
            n,
            components: 1,
            seed: 0,
        }
    }

    pub fn random(n: usize, components: usize, seed: u64) -> Self {
        Self {
            family: Family::RandomForest,
            n,
            components,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidSpec("n must be at least 1".into()));
        }
        if self.components == 0 || self.components > self.n {
            return Err(Error::InvalidSpec(format!(
                "components must lie in 1..={}, got {}",
                self.n, self.components
            )));
        }
        Ok(())
    }
}

/// Uniform index below `k` from one 64-bit draw.
fn below(rng: &mut SplitMix64, k: usize) -> usize {
    ((rng.next_u64() as u128 * k as u128) >> 64) as usize
}

pub fn generate(spec: &GenSpec) -> Result<Forest> {
    spec.validate()?;
    let n = spec.n;
    let half = n.div_ceil(2);
    let edges: Vec<(usize, usize)> = match spec.family {
        Family::Path => (1..n).map(|i| (i - 1, i)).collect(),
        Family::Star => (1..n).map(|i| (0, i)).collect(),
        Family::Caterpillar => (1..half)
            .map(|i| (i - 1, i))
            .chain((half..n).map(|v| (v - half, v)))
            .collect(),
        Family::Spider => (1..n)
            .map(|v| if v % 2 == 1 { (0, v) } else { (v - 1, v) })
            .collect(),
        Family::Broom => (1..half)
            .map(|i| (i - 1, i))
            .chain((half..n).map(|v| (half - 1, v)))
            .collect(),
        Family::RandomForest => {
            let mut rng = SplitMix64::seed_from_u64(spec.seed);
            let c = spec.components;
            let mut members: Vec<Vec<usize>> = (0..c).map(|r| vec![r]).collect();
            let mut edges = Vec::with_capacity(n - c);
            for v in c..n {
                let comp = &mut members[below(&mut rng, c)];
                let parent = comp[below(&mut rng, comp.len())];
                comp.push(v);
                edges.push((parent, v));
            }
            edges
        }
    };
    Forest::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::components;

    #[test]
    fn structured_families() {
        let p = generate(&GenSpec::new(Family::Path, 5)).unwrap();
        assert_eq!(p.edges(), &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let s = generate(&GenSpec::new(Family::Star, 4)).unwrap();
        assert_eq!(s.edges(), &[(0, 1), (0, 2), (0, 3)]);
        let c = generate(&GenSpec::new(Family::Caterpillar, 7)).unwrap();
        assert_eq!(c.edges(), &[(0, 1), (0, 4), (1, 2), (1, 5), (2, 3), (2, 6)]);
        let sp = generate(&GenSpec::new(Family::Spider, 6)).unwrap();
        assert_eq!(sp.edges(), &[(0, 1), (0, 3), (0, 5), (1, 2), (3, 4)]);
        let b = generate(&GenSpec::new(Family::Broom, 6)).unwrap();
        assert_eq!(b.edges(), &[(0, 1), (1, 2), (2, 3), (2, 4), (2, 5)]);
    }

    #[test]
    fn single_vertex_everywhere() {
        for family in Family::ALL {
            let f = generate(&GenSpec::new(family, 1)).unwrap();
            assert_eq!((f.vertex_count(), f.edge_count()), (1, 0), "{family}");
        }
    }

    #[test]
    fn splitmix_reference_stream() {
        // First outputs of SplitMix64 seeded with 0, from the reference C code.
        let mut rng = SplitMix64::seed_from_u64(0);
        assert_eq!(rng.next_u64(), 0xE220A8397B1DCDAF);
        assert_eq!(rng.next_u64(), 0x6E789E6AA1B965F4);
    }

    #[test]
    fn random_forest_is_reproducible() {
        let spec = GenSpec::random(6, 2, 7);
        let a = generate(&spec).unwrap();
        let b = generate(&spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_edge_list(), b.to_edge_list());
        assert_eq!(components(&a).len(), 2);
        assert_eq!(a.edge_count(), 4);
    }

    #[test]
    fn random_forest_component_count() {
        for seed in 0..50 {
            let f = generate(&GenSpec::random(20, 3, seed)).unwrap();
            assert_eq!(components(&f).len(), 3);
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(generate(&GenSpec::new(Family::Path, 0)).is_err());
        assert!(generate(&GenSpec::random(3, 4, 0)).is_err());
        assert!(generate(&GenSpec::random(3, 0, 0)).is_err());
        assert!("tree".parse::<Family>().is_err());
        assert_eq!("broom".parse::<Family>().unwrap(), Family::Broom);
    }
}
