//! Exhaustive checks over the generated atlas.

mod common;

use kbgraph::atlas::{connected_graphs, generate_twin_free_connected, twin_free_range};
use kbgraph::bicliques::Biclique;
use kbgraph::conditions::{check_theorem1, Verdict};
use kbgraph::kb::biclique_graph;
use kbgraph::lab::{
    test_conjecture2, test_conjecture3, verify_lemma1_base, verify_observation1, LabOptions,
};
use kbgraph::removal::{
    classify_degree2, construct_h_prime, family1_neighbor_bicliques, Family, FAMILY_GUARANTEE_ORDER,
};
use kbgraph::twins::is_twin_free;

#[test]
fn generated_levels_match_labeled_counts() {
    // Sum of n!/|Aut(G)| over classes equals the number of labeled
    // connected graphs exactly when each class appears once.
    for n in 1..=7 {
        let graphs = connected_graphs(n).unwrap();
        let labeled: u128 = graphs
            .iter()
            .map(|g| (common::factorial(n) / common::automorphism_count(g)) as u128)
            .sum();
        assert_eq!(labeled, common::labeled_connected_count(n), "n = {n}");
    }
    assert_eq!(common::labeled_connected_count(7), 1_866_256);
}

#[test]
fn twin_free_filter_is_exact() {
    for n in 1..=6 {
        for g in connected_graphs(n).unwrap().iter() {
            let brute = (0..n).all(|u| (u + 1..n).all(|v| g.neighbors(u) != g.neighbors(v)));
            assert_eq!(is_twin_free(g), brute);
        }
    }
}

#[test]
fn biclique_graphs_of_the_atlas_pass_the_condition() {
    for n in 2..=7 {
        for h in connected_graphs(n).unwrap().iter() {
            let kb = biclique_graph(h).unwrap().graph;
            assert_eq!(check_theorem1(&kb).verdict, Verdict::Pass);
        }
    }
}

#[test]
fn large_hosts_always_classify() {
    let mut seen = [0usize; 2];
    for n in FAMILY_GUARANTEE_ORDER..=8 {
        for h in generate_twin_free_connected(n).unwrap() {
            let kb = biclique_graph(&h).unwrap();
            for q in (0..kb.graph.n()).filter(|&q| kb.degree(q) == 2) {
                let plan = classify_degree2(&h, &kb, q).unwrap();
                assert!(plan.validate(&h));
                assert_eq!(plan.biclique, kb.bicliques[q]);
                construct_h_prime(&h, &plan).unwrap();
                match plan.family {
                    Family::One {
                        v,
                        w,
                        x,
                        independent,
                    } => {
                        seen[0] += 1;
                        assert_eq!(h.closed_neighbors(v), h.closed_neighbors(w));
                        assert_eq!(h.closed_neighbors(v).to_vec().len(), 3);
                        assert!(h.closed_neighbors(v).contains(x));
                        assert!(h.is_independent_set(independent).unwrap());
                        let (b1, b2) = family1_neighbor_bicliques(&h, &plan).unwrap();
                        let mut meets: Vec<Biclique> = kb
                            .bicliques
                            .iter()
                            .copied()
                            .filter(|b| *b != plan.biclique && b.intersects(&plan.biclique))
                            .collect();
                        meets.sort();
                        let mut want = vec![b1, b2];
                        want.sort();
                        assert_eq!(meets, want);
                    }
                    Family::Two { a, b, c } => {
                        seen[1] += 1;
                        assert_eq!(h.neighbors(a).to_vec(), vec![b]);
                        let mut nb = vec![a, c];
                        nb.sort();
                        assert_eq!(h.neighbors(b).to_vec(), nb);
                    }
                }
            }
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}

#[test]
fn reports_are_deterministic_across_worker_counts() {
    let one = LabOptions {
        jobs: Some(1),
        ..LabOptions::default()
    };
    let four = LabOptions {
        jobs: Some(4),
        ..LabOptions::default()
    };
    let pairs = [
        (
            verify_lemma1_base(6, one).unwrap(),
            verify_lemma1_base(6, four).unwrap(),
        ),
        (
            verify_observation1(&[7, 8], one).unwrap(),
            verify_observation1(&[7, 8], four).unwrap(),
        ),
        (
            test_conjecture2(8, 6, one).unwrap(),
            test_conjecture2(8, 6, four).unwrap(),
        ),
        (
            test_conjecture3(6, one).unwrap(),
            test_conjecture3(6, four).unwrap(),
        ),
    ];
    for (a, b) in pairs {
        assert_eq!(
            a.deterministic_json(),
            b.deterministic_json(),
            "{}",
            a.claim
        );
    }
}

#[test]
fn preimage_index_covers_small_kb_graphs() {
    // Every KB of a twin-free host up to 6 vertices is found, by a host no
    // larger than the one it came from.
    for h in twin_free_range(2, 6).unwrap() {
        let kb = biclique_graph(&h).unwrap().graph;
        let found = kbgraph::lab::find_preimage(&kb, 6).unwrap().unwrap();
        assert!(found.n() <= h.n());
    }
}
