//! Randomized invariants at sizes beyond the exhaustive suites.

mod common;

use proptest::prelude::*;

use common::random_tree;
use raag::certio::{parse_certificate, serialize_certificate};
use raag::classify::linear_forest;
use raag::constructions::{double, flatten_tree, retract_full_embedding};
use raag::decision::cycle_subdivision_certificate;
use raag::graph::{enumerate_full_embeddings, EmbeddingWitness, Graph};
use raag::textio::{parse_graph, serialize_graph, GraphDocument};

fn arb_graph(max_order: usize) -> impl Strategy<Value = Graph> {
    (1..=max_order).prop_flat_map(|n| {
        let pairs = n * (n.saturating_sub(1)) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in (u + 1)..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn complement_is_an_involution(g in arb_graph(24)) {
        prop_assert_eq!(g.complement().complement(), g.clone());
        let n = g.order();
        prop_assert_eq!(
            g.edge_count() + g.complement().edge_count(),
            n * n.saturating_sub(1) / 2
        );
    }

    #[test]
    fn join_decomposition_reassembles(g in arb_graph(12)) {
        let parts = g.join_decomposition();
        let mut total = 0;
        for (vs, part) in &parts {
            prop_assert_eq!(vs.len(), part.order());
            total += part.order();
        }
        prop_assert_eq!(total, g.order());
        // Distinct parts are fully joined.
        for (i, (vs_a, _)) in parts.iter().enumerate() {
            for (vs_b, _) in parts.iter().skip(i + 1) {
                for &a in vs_a {
                    for &b in vs_b {
                        prop_assert!(g.adjacent(a, b));
                    }
                }
            }
        }
    }

    #[test]
    fn double_injections_are_full_embeddings(g in arb_graph(10), sel in any::<prop::sample::Index>()) {
        let v = sel.index(g.order());
        let d = double(&g, v).unwrap();
        let star = g.local_structure(v).unwrap().star;
        prop_assert_eq!(d.graph.order(), 2 * g.order() - star.len());
        for inj in [&d.base_injection, &d.copy_injection] {
            let w = EmbeddingWitness {
                source: g.clone(),
                target: d.graph.clone(),
                map: inj.clone(),
            };
            prop_assert!(w.validate().is_ok());
        }
    }

    #[test]
    fn retraction_beyond_the_exhaustive_range(
        gamma in arb_graph(8),
        sel in any::<prop::sample::Index>(),
        parts in proptest::collection::vec(1usize..=4, 1..=3),
    ) {
        let v = sel.index(gamma.order());
        let dbl = double(&gamma, v).unwrap();
        let mut forest = Graph::empty(0);
        for &p in &parts {
            forest = forest.disjoint_union(&Graph::path(p));
        }
        let lam = forest.complement();
        let (maps, _) = enumerate_full_embeddings(&lam, &dbl.graph, 1 << 18);
        for map in maps.into_iter().take(50) {
            let phi = EmbeddingWitness {
                source: lam.clone(),
                target: dbl.graph.clone(),
                map,
            };
            let w = retract_full_embedding(&gamma, v, &dbl, &phi).unwrap();
            prop_assert!(w.validate().is_ok());
            prop_assert_eq!(&w.target, &gamma);
        }
    }

    #[test]
    fn flatten_random_trees(seed in any::<u64>(), n in 4usize..=18) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let t = random_tree(&mut rng, n);
        let measures = raag::classify::tree_measures(&t);
        prop_assert!(measures.is_tree);
        let (flat, cert) = flatten_tree(&t).unwrap();
        prop_assert!(flat.max_degree() <= 3);
        prop_assert_eq!(flat.order(), t.order() + measures.m);
        prop_assert!(cert.validate().is_ok());
        prop_assert!(raag::classify::tree_measures(&flat).is_tree);
    }

    #[test]
    fn linear_forest_refusals_are_witnesses(g in arb_graph(12)) {
        match linear_forest(&g) {
            raag::classify::LinearForestOutcome::Forest(d) => {
                let total: usize = d.path_lengths.iter().sum();
                prop_assert_eq!(total, g.order());
            }
            raag::classify::LinearForestOutcome::Refusal(r) => match r {
                raag::classify::ForestRefusal::HighDegreeVertex(v) => {
                    prop_assert!(g.degree(v) >= 3);
                }
                raag::classify::ForestRefusal::InducedCycle(cycle) => {
                    let k = cycle.len();
                    prop_assert!(k >= 3);
                    for i in 0..k {
                        prop_assert!(g.adjacent(cycle[i], cycle[(i + 1) % k]));
                    }
                }
            },
        }
    }

    #[test]
    fn graph_document_round_trip(g in arb_graph(16)) {
        let doc = GraphDocument::from_graph("g", &g);
        let text = serialize_graph(&doc);
        let parsed = parse_graph(&text).unwrap();
        prop_assert_eq!(&parsed, &doc);
        prop_assert_eq!(parsed.to_graph().unwrap(), g);
    }

    #[test]
    fn certificate_round_trip(m in 3usize..=6, extra in 0usize..=4) {
        let cert = cycle_subdivision_certificate(m, m + extra);
        let text = serialize_certificate(&cert);
        let parsed = parse_certificate(&text).unwrap();
        prop_assert_eq!(&parsed, &cert);
        prop_assert_eq!(serialize_certificate(&parsed), text);
    }
}
