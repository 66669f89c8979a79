mod common;

use dihyp::digraph::{in_ball, out_ball, strong_ball, strongly_connected_components};
use dihyp::digraph::{io, Digraph};
use dihyp::{all_pairs_distances, ExtDistance};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(prop::bool::weighted(0.3), n * n).prop_map(move |bits| {
            let edges: Vec<(usize, usize)> = bits
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| (i / n, i % n))
                .collect();
            common::graph(n, &edges)
        })
    })
}

fn named(g: &Digraph) -> (Vec<String>, Vec<(String, String, Option<String>)>) {
    let mut names = g.names().to_vec();
    names.sort();
    let mut edges: Vec<_> = g
        .edges()
        .iter()
        .map(|e| (g.name(e.from).to_owned(), g.name(e.to).to_owned(), e.label.clone()))
        .collect();
    edges.sort();
    (names, edges)
}

fn radius() -> impl Strategy<Value = ExtDistance> {
    prop_oneof![(0u32..6).prop_map(ExtDistance::Finite), Just(ExtDistance::Infinite)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn semimetric_axioms(g in arb_graph(12)) {
        let dm = all_pairs_distances(&g);
        for x in g.vertices() {
            for y in g.vertices() {
                prop_assert_eq!(dm.get(x, y) == ExtDistance::Finite(0), x == y);
                for z in g.vertices() {
                    prop_assert!(dm.get(x, z) <= dm.get(x, y) + dm.get(y, z));
                }
            }
        }
    }

    #[test]
    fn balls_grow_with_radius(g in arb_graph(10), r in radius(), s in radius(), c in 0usize..10) {
        let c = c % g.vertex_count();
        let dm = all_pairs_distances(&g);
        let (lo, hi) = if r <= s { (r, s) } else { (s, r) };
        for ball in [out_ball, in_ball, strong_ball] {
            let small = ball(&g, &dm, &[c], lo).unwrap();
            let big = ball(&g, &dm, &[c], hi).unwrap();
            prop_assert!(small.iter().all(|v| big.contains(v)));
        }
        let out = out_ball(&g, &dm, &[c], r).unwrap();
        let inn = in_ball(&g, &dm, &[c], r).unwrap();
        let both: Vec<_> = out.iter().copied().filter(|v| inn.contains(v)).collect();
        prop_assert_eq!(strong_ball(&g, &dm, &[c], r).unwrap(), both);
    }

    #[test]
    fn reverse_is_an_involution(g in arb_graph(10), r in radius(), c in 0usize..10) {
        let c = c % g.vertex_count();
        let rev = g.reverse();
        prop_assert_eq!(rev.reverse(), g.clone());
        let dm = all_pairs_distances(&g);
        let rdm = all_pairs_distances(&rev);
        prop_assert_eq!(in_ball(&g, &dm, &[c], r).unwrap(), out_ball(&rev, &rdm, &[c], r).unwrap());
    }

    #[test]
    fn components_keep_their_distances(g in arb_graph(10)) {
        let dm = all_pairs_distances(&g);
        let comps = strongly_connected_components(&g);
        let mut seen = vec![0; g.vertex_count()];
        for comp in &comps {
            let sub = all_pairs_distances(&comp.subgraph);
            for (i, &x) in comp.vertices.iter().enumerate() {
                seen[x] += 1;
                for (j, &y) in comp.vertices.iter().enumerate() {
                    prop_assert_eq!(sub.get(i, j), dm.get(x, y));
                    prop_assert!(dm.is_reachable(x, y));
                }
            }
        }
        prop_assert!(seen.iter().all(|&k| k == 1));
    }

    #[test]
    fn exports_round_trip(g in arb_graph(8)) {
        prop_assert_eq!(io::from_json(&io::to_json(&g)).unwrap(), g.clone());
        prop_assert_eq!(io::from_dot(&io::to_dot(&g, None)).unwrap(), g.clone());
        // the edge-list format only keeps the graph up to vertex order
        let h = io::parse_graph(&io::to_edge_list(&g)).unwrap();
        prop_assert_eq!(named(&h), named(&g));
    }
}
