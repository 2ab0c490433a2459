use proptest::prelude::*;

use umrg::bounds::{intersection_range, intersection_size, union_lower_bound, BoundContext, BoundMode};
use umrg::builders::{boesch_insertions, boesch_n_plus_2};
use umrg::census::boundary;
use umrg::graph6::{from_graph6, to_graph6};
use umrg::spectrum::{compare, cutset_spectrum, tree_number};
use umrg::{EdgeSet, Graph, NodeSet};

fn graph_from_mask(n: usize, mask: u32) -> Graph {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let edges = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &p)| p);
    Graph::new(n, edges.collect::<Vec<_>>()).unwrap()
}

fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        let hi = if pairs == 32 { u32::MAX } else { (1u64 << pairs) as u32 - 1 };
        (Just(n), 0..=hi).prop_map(|(n, mask)| graph_from_mask(n, mask))
    })
}

fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    any_graph(max_n).prop_filter("connected with edges", |g| g.is_connected() && g.edge_count() > 0)
}

fn edge_subset(e: usize) -> impl Strategy<Value = EdgeSet> {
    prop::collection::vec(any::<bool>(), e).prop_map(|bits| {
        bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
    })
}

fn trees_by_enumeration(g: &Graph) -> u64 {
    let n = g.node_count();
    let e = g.edge_count();
    (0u64..1 << e)
        .filter(|m| m.count_ones() as usize + 1 == n)
        .filter(|&m| {
            let removed: EdgeSet = (0..e).filter(|i| m >> i & 1 == 0).collect();
            g.without_edges(&removed).is_connected()
        })
        .count() as u64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn graph6_round_trip(g in any_graph(8)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn complement_is_an_involution(g in any_graph(8)) {
        let c = g.complement();
        prop_assert_eq!(c.edge_count() + g.edge_count(), g.node_count() * (g.node_count().saturating_sub(1)) / 2);
        prop_assert_eq!(c.complement(), g);
    }

    #[test]
    fn boundary_disconnects_and_is_symmetric(g in connected_graph(8), mask in any::<u32>()) {
        let full = g.nodes().0;
        let a = NodeSet(mask & full);
        prop_assume!(!a.is_empty() && a.0 != full);
        let cut = boundary(&g, a).unwrap();
        prop_assert_eq!(&cut, &boundary(&g, NodeSet(full & !a.0)).unwrap());
        prop_assert!(!g.without_edges(&cut).is_connected());
    }

    #[test]
    fn supersets_of_cutsets_are_cutsets(g in connected_graph(7), s in edge_subset(21), extra in 0usize..21) {
        let e = g.edge_count();
        let s: EdgeSet = s.iter().filter(|&i| i < e).collect();
        prop_assume!(!g.without_edges(&s).is_connected());
        let mut bigger = s;
        bigger.insert(extra % e);
        prop_assert!(!g.without_edges(&bigger).is_connected());
    }

    #[test]
    fn spectrum_grows_along_supersets(g in connected_graph(7)) {
        let s = cutset_spectrum(&g).unwrap();
        let e = g.edge_count() as u64;
        for k in 0..g.edge_count() {
            prop_assert!(s.m(k + 1) * (k as u64 + 1) >= s.m(k) * (e - k as u64));
        }
        prop_assert_eq!(s.m(g.edge_count()), u64::from(g.node_count() > 1));
    }

    #[test]
    fn tree_number_matches_enumeration(g in connected_graph(6)) {
        prop_assert_eq!(tree_number(&g), trees_by_enumeration(&g).into());
    }

    #[test]
    fn unreliability_is_monotone(g in connected_graph(7), a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
        let s = cutset_spectrum(&g).unwrap();
        let p = s.polynomial();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(p.eval(lo).unwrap() <= p.eval(hi).unwrap() + 1e-12);
    }

    #[test]
    fn dominance_orders_unreliability(g in connected_graph(6), h in connected_graph(6), rho in 0.0f64..=1.0) {
        prop_assume!(g.edge_count() == h.edge_count());
        let (sg, sh) = (cutset_spectrum(&g).unwrap(), cutset_spectrum(&h).unwrap());
        if compare(&sg, &sh).unwrap().dominates {
            let (ug, uh) = (sg.polynomial().eval(rho).unwrap(), sh.polynomial().eval(rho).unwrap());
            prop_assert!(ug <= uh + 1e-12);
        }
    }

    #[test]
    fn bounds_are_sound_and_ordered(g in connected_graph(7), mask in any::<u32>(), k in 0usize..=21) {
        let a = NodeSet(mask & g.nodes().0);
        prop_assume!(!a.is_empty() && k <= g.edge_count());
        let truth = cutset_spectrum(&g).unwrap().m(k) as i64;
        let ctx = BoundContext::from_graph(&g, a, k).unwrap();
        let exact = union_lower_bound(&ctx, BoundMode::ExactGraph, None).unwrap().bound_value;
        let degrees = union_lower_bound(&ctx, BoundMode::DegreesOnly, None).unwrap().bound_value;
        let refined = union_lower_bound(&ctx, BoundMode::Refined, None).unwrap().bound_value;
        prop_assert!(exact <= truth);
        prop_assert!(degrees <= exact);
        prop_assert!(refined <= exact);
    }

    #[test]
    fn intersections_lie_in_the_degree_range(g in connected_graph(7), mask in any::<u32>(), k in 0usize..=21) {
        let a = NodeSet(mask & g.nodes().0);
        prop_assume!(!a.is_empty() && k <= g.edge_count());
        let ctx = BoundContext::from_graph(&g, a, k).unwrap();
        for s in 1u32..1 << ctx.degrees.len() {
            let sum = NodeSet(s).iter().map(|i| ctx.degrees[i]).sum();
            let (lo, hi) = intersection_range(ctx.e, k, sum, s.count_ones() as usize);
            let exact = intersection_size(&ctx, s).unwrap();
            prop_assert!(lo <= exact && exact <= hi);
        }
    }

    #[test]
    fn boesch_graphs_are_balanced(n in 4usize..=32) {
        let g = boesch_n_plus_2(n).unwrap();
        prop_assert_eq!(g.node_count(), n);
        prop_assert_eq!(g.edge_count(), n + 2);
        prop_assert!(g.is_connected());
        let counts = boesch_insertions(n).unwrap();
        prop_assert!(counts.iter().max().unwrap() - counts.iter().min().unwrap() <= 1);
        prop_assert_eq!(counts.iter().sum::<usize>(), n - 4);
    }
}
