#![allow(dead_code)]

use nullforest::{generate, Family, Forest, GenSpec};

/// Seeded random forests: `count` instances with 1..=10 vertices and up to
/// three components.
pub fn random_corpus(count: usize) -> Vec<Forest> {
    (0..count)
        .map(|i| {
            let n = 1 + i % 10;
            let components = 1 + (i / 10) % n.min(3);
            generate(&GenSpec::random(n, components, i as u64)).unwrap()
        })
        .collect()
}

/// Every structured family for n = 1..=max_n.
pub fn structured_corpus(max_n: usize) -> Vec<Forest> {
    let mut out = Vec::new();
    for family in Family::ALL {
        if family == Family::RandomForest {
            continue;
        }
        for n in 1..=max_n {
            out.push(generate(&GenSpec::new(family, n)).unwrap());
        }
    }
    out
}

/// All caterpillars with exactly `n` vertices: a spine `0..k` and, for each
/// composition of `n - k` into `k` non-negative leg counts, the legs hung
/// off the spine in order.
pub fn caterpillars(n: usize) -> Vec<Forest> {
    let mut out = Vec::new();
    for k in 1..=n {
        let mut legs = vec![0usize; k];
        compositions(n - k, 0, &mut legs, &mut |legs| {
            let mut edges: Vec<(usize, usize)> = (1..k).map(|i| (i - 1, i)).collect();
            let mut next = k;
            for (spine, &count) in legs.iter().enumerate() {
                for _ in 0..count {
                    edges.push((spine, next));
                    next += 1;
                }
            }
            out.push(Forest::new(n, edges).unwrap());
        });
    }
    out
}

fn compositions(rest: usize, at: usize, legs: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    if at + 1 == legs.len() {
        legs[at] = rest;
        emit(legs);
        return;
    }
    for take in 0..=rest {
        legs[at] = take;
        compositions(rest - take, at + 1, legs, emit);
    }
}

/// The full acceptance corpus.
pub fn corpus() -> Vec<Forest> {
    let mut out = random_corpus(600);
    out.extend(structured_corpus(10));
    for n in 1..=10 {
        out.extend(caterpillars(n));
    }
    out
}
