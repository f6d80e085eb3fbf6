mod common;

use kbgraph::atlas::{
    are_isomorphic, canonical_form, canonical_graph, is_isomorphism, isomorphism,
};
use kbgraph::bicliques::{brute_force_bicliques, enumerate_bicliques};
use kbgraph::conditions::{check_theorem1, induced_p3s, p3_contained, verify_containment, Verdict};
use kbgraph::graph::{parse_edge_list, parse_graph6, to_edge_list, to_graph6, Graph, VertexSet};
use kbgraph::kb::biclique_graph;
use kbgraph::removal::{analyze_not_biclique, BicliqueVerdict};
use kbgraph::twins::{false_twin_classes, is_twin_free, twin_reduce};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edge_list(n, &edges).unwrap()
        })
    })
}

fn connected_strategy(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi, any::<u64>())
        .prop_map(|(n, seed)| common::random_connected(&mut common::rng(seed), n))
}

fn with_permutation(g: Graph) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    let n = g.n();
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(move |p| (g.clone(), p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn graph6_roundtrip(g in graph_strategy(64)) {
        let s = to_graph6(&g);
        prop_assert!(s.bytes().all(|b| (63..=126).contains(&b)));
        prop_assert_eq!(parse_graph6(&s).unwrap(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn edge_list_roundtrip(g in graph_strategy(20)) {
        prop_assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn canonical_form_is_invariant((g, p) in graph_strategy(14).prop_flat_map(with_permutation)) {
        let h = g.permute(&p).unwrap();
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        prop_assert_eq!(canonical_graph(&g).unwrap(), canonical_graph(&h).unwrap());
        let phi = isomorphism(&g, &h).unwrap().unwrap();
        prop_assert!(is_isomorphism(&g, &h, &phi));
    }

    #[test]
    fn canonical_form_separates(g in graph_strategy(7), h in graph_strategy(7)) {
        // Brute force over all bijections decides isomorphism independently.
        let mut brute = false;
        if g.n() == h.n() && g.edge_count() == h.edge_count() {
            common::for_each_permutation(g.n(), |p| {
                if !brute && g.edges().all(|(u, v)| h.has_edge(p[u], p[v])) {
                    brute = true;
                }
            });
        }
        prop_assert_eq!(canonical_form(&g).unwrap() == canonical_form(&h).unwrap(), brute);
    }

    #[test]
    fn enumeration_matches_oracle(g in connected_strategy(2, 12)) {
        let fast = enumerate_bicliques(&g).unwrap();
        prop_assert_eq!(&fast, &brute_force_bicliques(&g).unwrap());
        for (i, a) in fast.iter().enumerate() {
            for b in &fast[i + 1..] {
                prop_assert!(!a.vertices().is_subset(b.vertices()));
                prop_assert!(!b.vertices().is_subset(a.vertices()));
            }
        }
        for (u, v) in g.edges() {
            let e = VertexSet::from_slice(&[u, v]);
            prop_assert!(fast.iter().any(|b| e.is_subset(b.vertices())));
        }
        let covered: VertexSet = fast.iter().fold(VertexSet::EMPTY, |s, b| s.union(b.vertices()));
        prop_assert_eq!(covered, g.vertices());
    }

    #[test]
    fn twin_reduction_is_twin_free_and_preserves_kb(g in connected_strategy(2, 11)) {
        let r = twin_reduce(&g);
        prop_assert!(is_twin_free(&r.graph));
        prop_assert_eq!(r.graph.n(), false_twin_classes(&g).classes.len());
        prop_assert!(r.graph.is_connected());
        let a = biclique_graph(&g).unwrap().graph;
        let b = biclique_graph(&r.graph).unwrap().graph;
        prop_assert!(are_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn biclique_graphs_pass_the_condition(g in connected_strategy(2, 10)) {
        let kb = biclique_graph(&g).unwrap().graph;
        prop_assert_eq!(check_theorem1(&kb).verdict, Verdict::Pass);
    }

    #[test]
    fn containment_matches_brute_force(g in graph_strategy(9)) {
        for p in induced_p3s(&g) {
            let found = p3_contained(&g, p).unwrap();
            prop_assert_eq!(found.is_some(), common::p3_covered_brute(&g, p.x, p.y, p.z));
            if let Some(c) = found {
                prop_assert!(verify_containment(&g, p, c));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn analysis_certificates_verify(g in connected_strategy(3, 9)) {
        let a = analyze_not_biclique(&g, 6).unwrap();
        prop_assert!(a.certificate_holds().unwrap());
        match a.verdict {
            BicliqueVerdict::NotBiclique => {
                let i = a.certificate_step.unwrap();
                prop_assert!(a.chain[i].violation.is_some());
            }
            BicliqueVerdict::IsBiclique => prop_assert!(a.chain[0].preimage.is_some()),
            BicliqueVerdict::Inconclusive => {}
        }
        for w in a.chain.windows(2) {
            let v = w[1].removed.unwrap();
            prop_assert_eq!(w[0].graph.degree(v), 2);
            prop_assert_eq!(&w[0].graph.remove_vertex(v).unwrap().0, &w[1].graph);
        }
    }
}
