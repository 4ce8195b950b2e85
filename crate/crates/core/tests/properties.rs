use std::collections::HashSet;

use proptest::prelude::*;

use hline_core::canon::{canonical_code, is_isomorphic};
use hline_core::classify::classify;
use hline_core::cycles::{circumference, girth};
use hline_core::hline::{edge_in_pn, hl_step, pn_adjacent};
use hline_core::io::{decode_graph6, encode_graph6, parse_edge_list};
use hline_core::lab::{arm_decomposition, proper_subgraphs};
use hline_core::verify::oracle;
use hline_core::{Budget, Graph};

fn graph_strategy(max_order: usize) -> impl Strategy<Value = Graph> {
    (1..=max_order).prop_flat_map(|order| {
        let pairs = order * (order - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..order {
                for j in i + 1..order {
                    if bits[k] {
                        edges.push((i, j));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(order, edges).unwrap()
        })
    })
}

fn connected_strategy(max_order: usize) -> impl Strategy<Value = Graph> {
    graph_strategy(max_order).prop_filter("connected", |g| g.is_connected() && g.size() > 0)
}

/// Random tree by parent pointers, closed by one extra edge.
fn unicyclic_strategy(max_order: usize) -> impl Strategy<Value = Graph> {
    (3..=max_order)
        .prop_flat_map(|order| {
            let parents: Vec<BoxedStrategy<usize>> = (1..order).map(|v| (0..v).boxed()).collect();
            (Just(order), parents, any::<prop::sample::Index>())
        })
        .prop_filter_map("needs a non-tree pair", |(order, parents, pick)| {
            let mut edges: Vec<(usize, usize)> = parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
            let tree = Graph::from_edges(order, edges.clone()).unwrap();
            let free: Vec<(usize, usize)> = (0..order)
                .flat_map(|i| (i + 1..order).map(move |j| (i, j)))
                .filter(|&(i, j)| !tree.has_edge(i, j))
                .collect();
            if free.is_empty() {
                return None;
            }
            edges.push(free[pick.index(free.len())]);
            Some(Graph::from_edges(order, edges).unwrap())
        })
}

fn permutation(order: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..order).collect::<Vec<_>>()).prop_shuffle()
}

fn relabeled(max_order: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph_strategy(max_order).prop_flat_map(|g| {
        let order = g.order();
        (Just(g), permutation(order))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn canonical_code_ignores_labels((g, perm) in relabeled(8)) {
        let h = g.relabel(&perm);
        prop_assert_eq!(canonical_code(&g).unwrap(), canonical_code(&h).unwrap());
        prop_assert_eq!(canonical_code(&g).unwrap().to_graph().size(), g.size());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn isomorphism_matches_brute_force(a in graph_strategy(6), b in graph_strategy(6)) {
        prop_assert_eq!(is_isomorphic(&a, &b).unwrap(), oracle::brute_force_isomorphic(&a, &b));
    }

    #[test]
    fn cycle_measures_match_oracle(g in graph_strategy(8)) {
        let cr = circumference(&g).unwrap();
        prop_assert_eq!(cr, oracle::naive_circumference(&g));
        prop_assert_eq!(girth(&g), oracle::naive_girth(&g));
        prop_assert!(girth(&g) <= cr);
    }

    #[test]
    fn operator_matches_definition(g in graph_strategy(8), n in 3usize..=6) {
        let h = hl_step(&g, n);
        prop_assert_eq!(&h.graph, &oracle::naive_hl(&g, n));
        prop_assert_eq!(&h.provenance, &g.edges());
        let on = oracle::edges_on_pn(&g, n);
        for e in g.edges() {
            prop_assert_eq!(edge_in_pn(&g, e, n).unwrap(), on.contains(&e));
        }
    }

    #[test]
    fn adjacency_is_symmetric(g in connected_strategy(7), n in 4usize..=6) {
        let edges = g.edges();
        for (i, &e) in edges.iter().enumerate() {
            for &f in &edges[i + 1..] {
                prop_assert_eq!(pn_adjacent(&g, e, f, n).unwrap(), pn_adjacent(&g, f, e, n).unwrap());
            }
        }
    }

    #[test]
    fn image_has_one_nontrivial_component(g in connected_strategy(9), n in 4usize..=7) {
        let h = hl_step(&g, n).graph;
        prop_assert!(h.components().iter().filter(|c| c.len() > 1).count() <= 1);
    }

    #[test]
    fn certificates_are_sound(g in connected_strategy(8), n in 4usize..=6) {
        let c = classify(&g, n, Budget::default());
        if let Some(r) = c.verify_certificate() {
            prop_assert!(r.is_ok(), "{:?}", r);
        }
    }

    #[test]
    fn classification_ignores_labels((g, perm) in relabeled(7), n in 4usize..=6) {
        let a = classify(&g, n, Budget::default()).summary();
        let b = classify(&g.relabel(&perm), n, Budget::default()).summary();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn arms_partition_vertices(g in unicyclic_strategy(10)) {
        let d = arm_decomposition(&g).expect("unicyclic");
        let covered = d.cycle.len() + d.arms.iter().map(Vec::len).sum::<usize>();
        prop_assert_eq!(covered, g.order());
        for (arm, &root) in d.arms.iter().zip(&d.roots) {
            prop_assert!(d.cycle.contains(&root));
            let attached: HashSet<usize> = arm
                .iter()
                .flat_map(|&v| g.neighbors(v).iter().copied())
                .filter(|w| d.cycle.contains(w))
                .collect();
            prop_assert_eq!(attached, HashSet::from([root]));
        }
    }

    #[test]
    fn circumference_does_not_drop(g in unicyclic_strategy(9), n in 4usize..=6) {
        let covered = g.edges().into_iter().all(|e| edge_in_pn(&g, e, n).unwrap());
        prop_assume!(covered);
        let h = hl_step(&g, n).graph;
        prop_assert!(circumference(&h).unwrap() >= circumference(&g).unwrap());
    }

    #[test]
    fn text_formats_round_trip(g in graph_strategy(12)) {
        prop_assert_eq!(&parse_edge_list(&g.to_string()).unwrap(), &g);
        prop_assert_eq!(&decode_graph6(&encode_graph6(&g)).unwrap(), &g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn proper_subgraphs_are_closed(g in graph_strategy(5)) {
        let g = g.without_isolated();
        let subs = proper_subgraphs(&g).unwrap();
        let codes: HashSet<_> = subs.iter().map(|h| canonical_code(h).unwrap()).collect();
        prop_assert_eq!(codes.len(), subs.len());
        prop_assert!(!codes.contains(&canonical_code(&g).unwrap()));
        for h in &subs {
            prop_assert!(h.size() < g.size());
            for s in proper_subgraphs(h).unwrap() {
                prop_assert!(codes.contains(&canonical_code(&s).unwrap()));
            }
        }
    }
}
