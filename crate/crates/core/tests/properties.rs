mod common;

use std::collections::BTreeSet;

use epkit::decomposition::{tree_decomposition, TdMode};
use epkit::driver::{solve, strip_null_arcs, DriverConfig};
use epkit::oracle::{enumerate_non_null_cycles, ep_predicate, max_packing, min_gfvs, OracleConfig, PackingMode};
use epkit::{
    find_consistent_labeling, non_null_path_exists, untangle, walk_value, GroupElement, GroupSpec, LabeledGraph,
    LabelingOutcome, VertexSet, Walk,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn spec(i: usize) -> GroupSpec {
    [
        GroupSpec::Cyclic(2),
        GroupSpec::Cyclic(3),
        GroupSpec::Cyclic(6),
        GroupSpec::Symmetric(3),
        GroupSpec::Product(vec![GroupSpec::Cyclic(2), GroupSpec::Cyclic(2)]),
    ][i % 5]
        .clone()
}

fn graph(seed: u64, n: usize, extra: usize, group: usize) -> LabeledGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    common::random_graph(&mut rng, &spec(group), n, n + extra, true)
}

fn graphs(max_n: usize) -> impl Strategy<Value = LabeledGraph> {
    (any::<u64>(), 1..=max_n, 0..=max_n, 0..5usize).prop_map(|(s, n, e, g)| graph(s, n, e, g))
}

/// Every simple `u`–`v` path value, by exhaustive search.
fn path_values(g: &LabeledGraph, u: usize, v: usize) -> Vec<GroupElement> {
    fn go(g: &LabeledGraph, at: usize, v: usize, val: GroupElement, seen: &mut Vec<usize>, out: &mut Vec<GroupElement>) {
        if at == v {
            out.push(val);
            return;
        }
        for (_, a) in g.arcs() {
            let (next, label) = if a.tail == at && a.head != at {
                (a.head, a.label.clone())
            } else if a.head == at && a.tail != at {
                (a.tail, a.label.inverse())
            } else {
                continue;
            };
            if seen.contains(&next) {
                continue;
            }
            seen.push(next);
            go(g, next, v, val.multiply(&label), seen, out);
            seen.pop();
        }
    }
    let mut out = Vec::new();
    go(g, u, v, GroupElement::identity(g.group()), &mut vec![u], &mut out);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn labeling_matches_cycle_enumeration(g in graphs(7)) {
        let cycles = common::non_null_cycle_sets(&g);
        match find_consistent_labeling(&g) {
            LabelingOutcome::Consistent(lambda) => {
                prop_assert!(cycles.is_empty());
                prop_assert!(lambda.is_consistent_on(&g));
            }
            LabelingOutcome::NonNullCycle(c) => {
                prop_assert!(common::is_non_null_simple_cycle(&g, &c));
                prop_assert!(cycles.contains(&c.arc_set()));
            }
        }
        prop_assert_eq!(common::is_clean(&g), cycles.is_empty());
    }

    #[test]
    fn untangle_keeps_non_null_cycles(g in graphs(6), mask in any::<u8>()) {
        let a: VertexSet = g.vertices().filter(|v| mask >> v & 1 == 1).collect();
        let clean = common::is_clean(&g.induced_subgraph(&a).unwrap());
        match untangle(&g, &a) {
            Ok(h) => {
                prop_assert!(clean);
                prop_assert_eq!(common::non_null_cycle_sets(&g), common::non_null_cycle_sets(&h));
                for (_, arc) in h.arcs() {
                    if a.contains(&arc.tail) && a.contains(&arc.head) {
                        prop_assert!(arc.label.is_identity());
                    }
                }
            }
            Err(_) => prop_assert!(!clean),
        }
    }

    #[test]
    fn non_null_path_matches_brute_force(g in graphs(7), u in 0..7usize, v in 0..7usize) {
        prop_assume!(u != v && g.contains_vertex(u) && g.contains_vertex(v));
        let brute = path_values(&g, u, v).iter().any(|x| !x.is_identity());
        match non_null_path_exists(&g, u, v) {
            Some(p) => {
                let (verts, value) = common::trace(&g, &p).unwrap();
                let distinct: BTreeSet<_> = verts.iter().collect();
                prop_assert!(brute);
                prop_assert_eq!(distinct.len(), verts.len());
                prop_assert_eq!((verts[0], *verts.last().unwrap()), (u, v));
                prop_assert!(!value.is_identity());
            }
            None => prop_assert!(!brute),
        }
    }

    #[test]
    fn cycle_values_under_rotation_and_reversal(g in graphs(6)) {
        for c in enumerate_non_null_cycles(&g, &OracleConfig::default()).unwrap() {
            let value = walk_value(&g, &c).unwrap();
            prop_assert_eq!(walk_value(&g, &c.reversed(&g)).unwrap(), value.inverse());
            for i in 0..c.len() {
                prop_assert!(!walk_value(&g, &c.rotated(&g, i)).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn concatenation_multiplies(g in graphs(6), split in 1..6usize) {
        for c in enumerate_non_null_cycles(&g, &OracleConfig::default()).unwrap() {
            let i = split % c.len();
            if i == 0 {
                continue;
            }
            let (p, q) = (Walk::from_steps(&g, c.steps()[..i].to_vec()).unwrap(), Walk::from_steps(&g, c.steps()[i..].to_vec()).unwrap());
            let joined = p.concat(&g, &q).unwrap();
            prop_assert_eq!(walk_value(&g, &joined).unwrap(), walk_value(&g, &p).unwrap().multiply(&walk_value(&g, &q).unwrap()));
        }
    }

    #[test]
    fn decompositions_are_valid(g in graphs(10)) {
        let exact = tree_decomposition(&g, TdMode::Exact).unwrap();
        let heuristic = tree_decomposition(&g, TdMode::Heuristic).unwrap();
        prop_assert!(exact.validate(&g).is_ok());
        prop_assert!(heuristic.validate(&g).is_ok());
        prop_assert!(exact.width() <= heuristic.width());
    }

    #[test]
    fn oracle_matches_brute_force(g in graphs(7)) {
        let cfg = OracleConfig::default();
        let cycles = common::all_cycles(&g);
        let non_null: Vec<_> = cycles.iter().filter(|c| c.2).collect();
        prop_assert_eq!(enumerate_non_null_cycles(&g, &cfg).unwrap().len(), non_null.len());
        let verts: Vec<usize> = g.vertices().collect();
        let brute = common::subsets(&verts, verts.len())
            .into_iter()
            .filter(|x| non_null.iter().all(|c| !c.1.is_disjoint(x)))
            .map(|x| x.len())
            .min()
            .unwrap();
        let (size, witness) = min_gfvs(&g, &cfg).unwrap();
        prop_assert_eq!(size, brute);
        prop_assert!(common::is_gfvs(&g, &witness));
        let sets: Vec<VertexSet> = non_null.iter().map(|c| c.1.clone()).collect();
        let integral = max_packing(&g, PackingMode::Integral, &cfg).unwrap().0;
        prop_assert_eq!(integral, common::max_disjoint(&sets));
        prop_assert!(integral <= max_packing(&g, PackingMode::HalfIntegral, &cfg).unwrap().0);
    }

    #[test]
    fn ep_predicate_is_monotone(g in graphs(7), k in 1..4usize) {
        let cfg = OracleConfig::default();
        for p in 0..g.num_vertices() {
            let here = ep_predicate(&g, k, p, &cfg).unwrap();
            prop_assert!(!here || ep_predicate(&g, k, p + 1, &cfg).unwrap());
            prop_assert!(!ep_predicate(&g, k + 1, p, &cfg).unwrap() || here);
        }
    }

    #[test]
    fn strip_keeps_exactly_the_arcs_on_non_null_cycles(g in graphs(7)) {
        let on_cycles: BTreeSet<usize> = common::all_cycles(&g).into_iter().filter(|c| c.2).flat_map(|c| c.0).collect();
        let kept: BTreeSet<usize> = strip_null_arcs(&g).arcs().map(|(a, _)| a).collect();
        prop_assert_eq!(kept, on_cycles);
    }

    #[test]
    fn solve_is_deterministic(g in graphs(9), k in 1..4usize) {
        let cfg = DriverConfig { oracle_fallback: true, ..DriverConfig::default() };
        let a = solve(&g, k, &cfg).unwrap().to_json();
        prop_assert_eq!(a, solve(&g, k, &cfg).unwrap().to_json());
    }
}
