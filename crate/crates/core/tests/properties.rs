mod common;

use std::collections::BTreeSet;

use common::{at_most_one_crossing_each, brute_force_orbits, interleave, Pairs};
use o1p_core::coloring::canonical_list_assignments;
use o1p_core::drawing::edges_cross;
use o1p_core::factory::{canonical_form, random_instance, random_lists, GeneratorConfig};
use o1p_core::{builtin_catalog, check_coloring, color_outer1planar, verify_trace, Edge, OuterDrawing};
use proptest::prelude::*;

fn edge_subset(max_n: usize) -> impl Strategy<Value = (usize, Pairs)> {
    (4..=max_n).prop_flat_map(|n| {
        let all: Pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let m = all.len();
        (Just(n), proptest::sample::subsequence(all, 0..=m.min(14)))
    })
}

fn relabel(n: usize, edges: &[(usize, usize)], r: usize, flip: bool) -> OuterDrawing {
    let map = |v: usize| if flip { (r + n - v) % n } else { (v + r) % n };
    OuterDrawing::new(n, edges.iter().map(|&(a, b)| (map(a), map(b)))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn crossing_rule_matches_interleaving(a in 0usize..10, b in 0usize..10, c in 0usize..10, d in 0usize..10) {
        prop_assume!(a != b && c != d);
        let (e, f) = (Edge::new(a, b), Edge::new(c, d));
        prop_assert_eq!(edges_cross(e, f), interleave((e.u(), e.v()), (f.u(), f.v())));
        prop_assert_eq!(edges_cross(e, f), edges_cross(f, e));
    }

    #[test]
    fn outer_1_planarity_matches_pair_count((n, edges) in edge_subset(9)) {
        let d = OuterDrawing::new(n, edges.iter().copied()).unwrap();
        prop_assert_eq!(d.is_outer1planar(), at_most_one_crossing_each(&edges));
        let pairs = edges.iter().enumerate()
            .map(|(i, &e)| edges[i + 1..].iter().filter(|&&f| interleave(e, f)).count())
            .sum::<usize>();
        if d.is_outer1planar() {
            prop_assert_eq!(d.crossings().len(), pairs);
        }
    }

    #[test]
    fn dihedral_relabeling_preserves_invariants((n, edges) in edge_subset(9), r in 0usize..9, flip: bool) {
        let d = OuterDrawing::new(n, edges.iter().copied()).unwrap();
        prop_assume!(d.is_outer1planar());
        let e = relabel(n, &edges, r % n, flip);
        prop_assert_eq!(canonical_form(&d), canonical_form(&e));
        prop_assert_eq!(d.crossing_distance().unwrap(), e.crossing_distance().unwrap());
        prop_assert_eq!(d.crossings().len(), e.crossings().len());
        prop_assert_eq!(d.is_two_connected(), e.is_two_connected());
    }

    #[test]
    fn json_round_trip((n, edges) in edge_subset(9)) {
        let d = OuterDrawing::new(n, edges.iter().copied()).unwrap();
        prop_assert_eq!(OuterDrawing::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn canonical_counts_match_orbits(sizes in proptest::collection::vec(1usize..=3, 1..=3), cap in 3usize..=5) {
        prop_assume!(sizes.iter().all(|&k| k <= cap));
        let edges: Vec<(Edge, usize)> = sizes.iter().enumerate().map(|(i, &k)| (Edge::new(2 * i, 2 * i + 1), k)).collect();
        let found: Vec<_> = canonical_list_assignments(&edges, cap).unwrap().collect();
        let distinct: BTreeSet<String> = found.iter().map(|l| l.to_json()).collect();
        prop_assert_eq!(distinct.len(), found.len());
        prop_assert_eq!(found.len(), brute_force_orbits(&sizes, cap));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn generated_instances_are_colored(n in 5usize..60, seed: u64, palette in prop::sample::select(vec![4usize, 8, 100])) {
        let cfg = GeneratorConfig::new(n, seed).crossings(0, n / 6);
        let cfg = GeneratorConfig { require_theta_at_least_three: true, ..cfg };
        let d = random_instance(&cfg).unwrap();
        prop_assert!(d.is_outer1planar());
        prop_assert!(d.max_degree() <= 4);
        prop_assert!(d.crossing_distance().unwrap().at_least(3));
        let lists = random_lists(&d, 4, palette, seed ^ 0x5eed).unwrap();
        let r = color_outer1planar(&d, &lists, builtin_catalog()).unwrap();
        prop_assert!(check_coloring(&d, Some(&lists), &r.coloring).is_ok());
        prop_assert!(verify_trace(&d, &lists, builtin_catalog(), &r).is_ok());
    }
}
