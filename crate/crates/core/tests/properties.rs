//! Invariants over arbitrary small forests, checked against brute force.

use std::collections::BTreeSet;

use proptest::prelude::*;

use nullforest::forest::components;
use nullforest::matching::Matching;
use nullforest::oracle::{brute_force_matching_size, support_oracle};
use nullforest::sparsest::SparsestPlan;
use nullforest::{
    alternating_basis, build_alt_digraph, generate, has_augmenting_path, maximum_matching, nullity,
    parse_forest, root_at, sparsest_basis, support_set, Family, Forest, GenSpec, NullBasis,
};

/// Random forest on up to `max_n` vertices with shuffled labels.
fn forest(max_n: usize) -> impl Strategy<Value = Forest> {
    (1..=max_n)
        .prop_flat_map(|n| {
            (
                proptest::collection::vec((any::<bool>(), any::<u32>()), n - 1),
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            )
        })
        .prop_map(|(attach, perm)| {
            let n = perm.len();
            let edges = attach
                .iter()
                .enumerate()
                .filter(|(_, (keep, _))| *keep)
                .map(|(i, &(_, pick))| {
                    let v = i + 1;
                    (perm[pick as usize % v], perm[v])
                });
            Forest::new(n, edges).unwrap()
        })
}

/// Every maximum matching of `f`, by edge-subset enumeration.
fn all_maximum_matchings(f: &Forest) -> Vec<Matching> {
    let edges = f.edges();
    let best = brute_force_matching_size(f).unwrap();
    (0u32..1 << edges.len())
        .filter(|mask| mask.count_ones() as usize == best)
        .filter_map(|mask| {
            let pairs = (0..edges.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| edges[i]);
            Matching::from_pairs(f, pairs).ok()
        })
        .collect()
}

fn neighborhood_sums_vanish(f: &Forest, b: &NullBasis) -> bool {
    b.vectors().iter().all(|(_, v)| {
        (0..f.vertex_count()).all(|x| f.neighbors(x).iter().map(|&y| v.get(y)).sum::<i64>() == 0)
    })
}

fn anchors_exclusive(b: &NullBasis) -> bool {
    b.vectors().iter().all(|(u, v)| {
        v.get(*u) == 1
            && b.vectors()
                .iter()
                .all(|(other, w)| other == u || w.get(*u) == 0)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn forest_structure(f in forest(40)) {
        let degrees: usize = (0..f.vertex_count()).map(|v| f.degree(v)).sum();
        prop_assert_eq!(degrees, 2 * f.edge_count());
        for comp in components(&f) {
            let inside = f.edges().iter().filter(|(u, _)| comp.binary_search(u).is_ok()).count();
            prop_assert_eq!(inside, comp.len() - 1);
        }
        let roots: Vec<usize> = components(&f).iter().map(|c| c[c.len() / 2]).collect();
        let rooted = root_at(&f, &roots).unwrap();
        let mut rebuilt: Vec<(usize, usize)> = (0..f.vertex_count())
            .filter_map(|v| rooted.parent(v).map(|p| (p.min(v), p.max(v))))
            .collect();
        rebuilt.sort_unstable();
        prop_assert_eq!(rebuilt.as_slice(), f.edges());
        let mut position = vec![0; f.vertex_count()];
        for (i, &v) in rooted.postorder().iter().enumerate() {
            position[v] = i;
        }
        for v in 0..f.vertex_count() {
            for c in rooted.children(v) {
                prop_assert!(position[c] < position[v]);
                prop_assert_eq!(rooted.parent(c), Some(v));
            }
        }
    }

    #[test]
    fn edge_list_round_trip(f in forest(40)) {
        prop_assert_eq!(parse_forest(&f.to_edge_list()).unwrap(), f);
    }

    #[test]
    fn matching_is_maximum_and_consistent(f in forest(14)) {
        let m = maximum_matching(&f);
        prop_assert_eq!(m.size(), brute_force_matching_size(&f).unwrap());
        prop_assert!(!has_augmenting_path(&f, &m));
        let mut saturated = 0;
        for v in 0..f.vertex_count() {
            if let Some(w) = m.mate(v) {
                saturated += 1;
                prop_assert_eq!(m.mate(w), Some(v));
                prop_assert!(f.has_edge(v, w));
            }
        }
        prop_assert_eq!(saturated, 2 * m.size());
    }

    #[test]
    fn augmenting_paths_exist_below_maximum(f in forest(12)) {
        let best = brute_force_matching_size(&f).unwrap();
        let m = maximum_matching(&f);
        if best > 0 {
            let mut pairs = m.pairs();
            pairs.pop();
            let smaller = Matching::from_pairs(&f, pairs).unwrap();
            prop_assert!(has_augmenting_path(&f, &smaller));
        }
    }

    #[test]
    fn digraph_matches_definition(f in forest(25)) {
        let m = maximum_matching(&f);
        let d = build_alt_digraph(&f, &m);
        let arcs: BTreeSet<(usize, usize)> = d.arcs().collect();
        let mut expected = BTreeSet::new();
        for x in 0..f.vertex_count() {
            for &v in f.neighbors(x) {
                if m.mate(x) == Some(v) {
                    continue;
                }
                if let Some(y) = m.mate(v) {
                    expected.insert((x, y));
                }
            }
        }
        prop_assert_eq!(&arcs, &expected);
        prop_assert!(d.arc_count() <= 2 * f.edge_count());
        // Acyclic: every search from every vertex terminates within n layers.
        for s in 0..f.vertex_count() {
            let mut layer = vec![s];
            for _ in 0..=f.vertex_count() {
                layer = layer.iter().flat_map(|&x| d.out_arcs(x).iter().copied()).collect();
            }
            prop_assert!(layer.is_empty());
        }
    }

    #[test]
    fn alternating_basis_properties(f in forest(30)) {
        let m = maximum_matching(&f);
        let b = alternating_basis(&f, &m);
        prop_assert_eq!(b.len(), nullity(&f));
        prop_assert!(neighborhood_sums_vanish(&f, &b));
        prop_assert!(anchors_exclusive(&b));
        let union: BTreeSet<usize> = b.vectors().iter().flat_map(|(_, v)| v.support()).collect();
        let s = support_set(&f, &m);
        prop_assert_eq!(union.into_iter().collect::<Vec<_>>(), s.clone());
        for &(u, v) in f.edges() {
            prop_assert!(!(s.contains(&u) && s.contains(&v)));
        }
    }

    #[test]
    fn support_does_not_depend_on_matching(f in forest(11)) {
        let expected = support_oracle(&f).unwrap();
        for m in all_maximum_matchings(&f) {
            prop_assert_eq!(&support_set(&f, &m), &expected);
            let b = alternating_basis(&f, &m);
            prop_assert!(neighborhood_sums_vanish(&f, &b));
            prop_assert!(anchors_exclusive(&b));
        }
    }

    #[test]
    fn support_forest_and_beta_invariants(f in forest(40)) {
        let plan = SparsestPlan::new(&f).unwrap();
        let g = &plan.support_forest;
        let t = g.rooted();
        for &(x, y) in g.forest().edges() {
            prop_assert!(g.in_s(x) != g.in_s(y));
        }
        for x in 0..g.len() {
            prop_assert!(g.forest().degree(x) > 0);
            if !g.in_s(x) {
                prop_assert!(g.forest().degree(x) >= 2);
            }
        }
        for &r in t.roots() {
            prop_assert!(g.in_s(r));
        }
        let b = &plan.beta;
        for x in 0..g.len() {
            let kids: Vec<usize> = t.children(x).collect();
            let above = t.parent(x).map_or(0, |p| b.beta(p));
            if g.in_s(x) {
                prop_assert_eq!(b.beta_down(x), 1 + kids.iter().map(|&c| b.beta_down(c)).sum::<usize>());
                prop_assert_eq!(b.beta(x), b.beta_down(x) + above);
            } else {
                prop_assert_eq!(b.beta_down(x), kids.iter().map(|&c| b.beta_down(c)).min().unwrap());
                prop_assert_eq!(b.beta(x), b.beta_down(x).min(above - b.beta_down(x)));
            }
            prop_assert!(b.beta_down(x) >= 1 && b.beta(x) >= 1);
        }
        let bm = &plan.beta_matching;
        for r in g.core() {
            let phi = bm.minimizer(r).unwrap();
            prop_assert_eq!(bm.matching().mate(r), Some(phi));
            let by_child = t.parent(phi) == Some(r) && b.beta_down(phi) == b.beta(r);
            let by_parent = t.parent(r) == Some(phi) && b.beta(phi) - b.beta_down(r) == b.beta(r);
            prop_assert!(by_child || by_parent);
        }
        prop_assert!(!has_augmenting_path(g.forest(), bm.matching()));
        prop_assert_eq!(plan.nullity(), nullity(&f));
    }

    #[test]
    fn sparsest_basis_properties(f in forest(60)) {
        let b = sparsest_basis(&f);
        prop_assert!(neighborhood_sums_vanish(&f, &b));
        prop_assert!(anchors_exclusive(&b));
        prop_assert_eq!(b.len(), nullity(&f));
        prop_assert_eq!(b.total_nnz(), nullforest::sparsest_nnz_count(&f));
        let anchors: Vec<usize> = b.anchors().collect();
        let mut sorted = anchors.clone();
        sorted.sort_unstable();
        sorted.dedup();
        prop_assert_eq!(anchors, sorted);
        // Never denser than the basis from an arbitrary maximum matching.
        let other = alternating_basis(&f, &maximum_matching(&f));
        prop_assert!(b.total_nnz() <= other.total_nnz());
    }

    #[test]
    fn generators_yield_valid_forests(n in 1usize..200, c in 1usize..6, seed in any::<u64>()) {
        let c = c.min(n);
        let f = generate(&GenSpec::random(n, c, seed)).unwrap();
        prop_assert_eq!(components(&f).len(), c);
        prop_assert_eq!(parse_forest(&f.to_edge_list()).unwrap(), f);
        for family in Family::ALL {
            let g = generate(&GenSpec::new(family, n)).unwrap();
            prop_assert_eq!(g.vertex_count(), n);
        }
    }
}

#[test]
fn path_and_star_nullities() {
    use nullforest::oracle::{adjacency_matrix, null_dimension};
    for n in 1..=12 {
        let p = generate(&GenSpec::new(Family::Path, n)).unwrap();
        let s = generate(&GenSpec::new(Family::Star, n)).unwrap();
        let exact = |f: &Forest| null_dimension(&adjacency_matrix::<nullforest::Rational>(f));
        assert_eq!(nullity(&p), n % 2);
        assert_eq!(exact(&p), n % 2);
        let star_nullity = if n == 1 { 1 } else { n - 2 };
        assert_eq!(nullity(&s), star_nullity);
        assert_eq!(exact(&s), star_nullity);
    }
}

#[test]
fn star_nnz_formula() {
    for n in 3..200 {
        let s = generate(&GenSpec::new(Family::Star, n)).unwrap();
        assert_eq!(nullforest::sparsest_nnz_count(&s), 2 * (n - 2));
    }
}
