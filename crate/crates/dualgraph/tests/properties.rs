//! Property-based checks of the structural invariants: canonical forms,
//! intersection data, move/inverse pairs, and stability of normal forms
//! and classification under noise and contraction order.

mod proptests {
    use std::collections::BTreeMap;

    use proptest::prelude::*;

    use dualgraph::intersection::{contraction_to_empty, greedy_contraction, is_contractible};
    use dualgraph::moves::MoveTrace;
    use dualgraph::normal_form::{
        is_minimal, minimalize, minimalize_with, standardize_linear, zero_out_neighbor,
    };
    use dualgraph::{classify, DualGraph, Outcome, VertexId};

    // -- strategies --------------------------------------------------------

    /// Connected graph on 1..=8 vertices: a random tree plus up to two extra
    /// edges (which may double existing ones).
    fn connected_graph_arb() -> impl Strategy<Value = DualGraph> {
        (1usize..=8).prop_flat_map(|n| {
            let weights = prop::collection::vec(-5i64..=3, n);
            let parents = prop::collection::vec(any::<u32>(), n.saturating_sub(1));
            let extras = prop::collection::vec((any::<u32>(), any::<u32>()), 0..=2);
            (Just(n), weights, parents, extras).prop_map(|(n, weights, parents, extras)| {
                let ids: Vec<VertexId> =
                    (0..n).map(|i| VertexId::new(format!("V{i}"))).collect();
                let vertices = ids.iter().cloned().zip(weights.iter().copied());
                let mut edges: Vec<(VertexId, VertexId)> = parents
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| {
                        let child = i + 1;
                        let parent = (p as usize) % child;
                        (ids[parent].clone(), ids[child].clone())
                    })
                    .collect();
                for &(a, b) in &extras {
                    let (a, b) = ((a as usize) % n, (b as usize) % n);
                    if a != b {
                        edges.push((ids[a].clone(), ids[b].clone()));
                    }
                }
                DualGraph::new(vertices, edges).expect("tree plus extras is connected")
            })
        })
    }

    /// A graph together with a permutation of its vertex ids.
    fn graph_with_relabeling_arb() -> impl Strategy<Value = (DualGraph, BTreeMap<VertexId, VertexId>)>
    {
        connected_graph_arb().prop_flat_map(|g| {
            let ids: Vec<VertexId> = g.vertices().map(|(v, _)| v.clone()).collect();
            let shuffled = Just(ids.clone()).prop_shuffle();
            (Just(g), shuffled).prop_map(move |(g, shuffled)| {
                let map: BTreeMap<VertexId, VertexId> = ids
                    .iter()
                    .cloned()
                    .zip(shuffled.iter().map(|v| VertexId::new(format!("R_{}", v.as_str()))))
                    .collect();
                (g, map)
            })
        })
    }

    fn rigid_chain_arb() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-5i64..=-2, 1..=8)
    }

    fn zigzag_arb() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-5i64..=-2, 0..=5).prop_map(|tail| {
            let mut ws = vec![0, 0];
            ws.extend(tail);
            ws
        })
    }

    /// Blow-up noise: interpret each `(kind, a, b)` against the current graph.
    fn apply_noise(g: &DualGraph, noise: &[(u8, u32, u32)]) -> DualGraph {
        let mut out = g.clone();
        let mut trace = MoveTrace::new(&out);
        for &(kind, a, b) in noise {
            let ids: Vec<VertexId> = out.vertices().map(|(v, _)| v.clone()).collect();
            let edges: Vec<(VertexId, VertexId)> = out
                .edges()
                .map(|(u, v, _)| (u.clone(), v.clone()))
                .collect();
            if kind % 2 == 0 || edges.is_empty() {
                let at = ids[(a as usize) % ids.len()].clone();
                trace.blow_up_outer(&mut out, &at).expect("outer blow-up is total");
            } else {
                let (u, v) = edges[(b as usize) % edges.len()].clone();
                trace
                    .blow_up_inner(&mut out, &u, &v)
                    .expect("inner blow-up needs only an edge");
            }
        }
        out
    }

    fn noise_arb() -> impl Strategy<Value = Vec<(u8, u32, u32)>> {
        prop::collection::vec((any::<u8>(), any::<u32>(), any::<u32>()), 0..=5)
    }

    // -- properties --------------------------------------------------------

    proptest! {
        #[test]
        fn canonical_form_is_relabeling_invariant((g, map) in graph_with_relabeling_arb()) {
            let relabeled = g.relabel(&map).unwrap();
            prop_assert_eq!(g.canonicalize(), relabeled.canonicalize());
        }

        #[test]
        fn chain_reversal_does_not_change_canonical_form(ws in prop::collection::vec(-5i64..=3, 1..=8)) {
            let fwd = DualGraph::chain(&ws);
            let rev: Vec<i64> = ws.iter().rev().copied().collect();
            prop_assert_eq!(fwd.canonicalize(), DualGraph::chain(&rev).canonicalize());
        }

        #[test]
        fn intersection_matrix_is_symmetric_with_weights_on_diagonal(g in connected_graph_arb()) {
            let m = g.intersection_matrix();
            let entries = m.entries();
            for (i, vi) in m.ordering().iter().enumerate() {
                prop_assert_eq!(entries[i][i], g.weight(vi).unwrap());
                for j in 0..entries.len() {
                    prop_assert_eq!(entries[i][j], entries[j][i]);
                    if i != j {
                        prop_assert_eq!(entries[i][j], g.edge_multiplicity(vi, &m.ordering()[j]) as i64);
                    }
                }
            }
        }

        #[test]
        fn blow_up_then_blow_down_restores_the_graph(
            g in connected_graph_arb(),
            pick in any::<u32>(),
            inner in any::<bool>(),
        ) {
            let before = g.canonicalize();
            let det_before = g.intersection_matrix().determinant();
            let mut cur = g.clone();
            let mut trace = MoveTrace::new(&cur);
            let fresh = if inner && cur.edge_count() > 0 {
                let edges: Vec<(VertexId, VertexId)> = cur
                    .edges()
                    .map(|(u, v, _)| (u.clone(), v.clone()))
                    .collect();
                let (u, v) = edges[(pick as usize) % edges.len()].clone();
                trace.blow_up_inner(&mut cur, &u, &v).unwrap()
            } else {
                let ids: Vec<VertexId> = cur.vertices().map(|(v, _)| v.clone()).collect();
                let at = ids[(pick as usize) % ids.len()].clone();
                trace.blow_up_outer(&mut cur, &at).unwrap()
            };
            let det_middle = cur.intersection_matrix().determinant();
            prop_assert_eq!(det_middle, -det_before.clone(), "each blow-up flips the determinant sign");
            trace.blow_down(&mut cur, &fresh).unwrap();
            prop_assert_eq!(cur.canonicalize(), before);
            prop_assert_eq!(cur.intersection_matrix().determinant(), det_before);
            // The recorded two-move trace replays from the start graph.
            prop_assert_eq!(trace.apply(&g).unwrap().canonicalize(), cur.canonicalize());
        }

        #[test]
        fn elementary_moves_preserve_the_determinant(a in -6i64..=6, b in -6i64..=6, w in -6i64..=6) {
            // Interior pivot.
            let g = DualGraph::chain(&[a, 0, b]);
            let det = g.intersection_matrix().determinant();
            let mut cur = g.clone();
            let mut trace = MoveTrace::new(&cur);
            trace
                .elementary(&mut cur, &VertexId::new("C2"), dualgraph::Direction::Toward(VertexId::new("C1")))
                .unwrap();
            prop_assert_eq!(cur.intersection_matrix().determinant(), det);
            prop_assert_eq!(cur.vertex_count(), 3);

            // End pivot.
            let g = DualGraph::chain(&[0, w]);
            let det = g.intersection_matrix().determinant();
            let mut cur = g.clone();
            let mut trace = MoveTrace::new(&cur);
            trace
                .elementary(&mut cur, &VertexId::new("C1"), dualgraph::Direction::Raise)
                .unwrap();
            prop_assert_eq!(cur.intersection_matrix().determinant(), det);
        }

        #[test]
        fn zero_out_neighbor_shifts_weight_to_the_far_side(a in -6i64..=6, b in -6i64..=6) {
            let g = DualGraph::chain(&[a, 0, b]);
            let mut cur = g.clone();
            let mut trace = MoveTrace::new(&cur);
            let pivot =
                zero_out_neighbor(&mut cur, &mut trace, &VertexId::new("C2"), &VertexId::new("C1"))
                    .unwrap();
            // The worked-on neighbor is now a 0-vertex, the far neighbor
            // absorbed its weight, and both original ends survive by name.
            prop_assert_eq!(cur.weight(&VertexId::new("C1")), Some(0));
            prop_assert_eq!(cur.weight(&VertexId::new("C3")), Some(a + b));
            prop_assert_eq!(cur.weight(&pivot), Some(0));
            prop_assert_eq!(cur.vertex_count(), 3);
            prop_assert_eq!(trace.apply(&g).unwrap().canonicalize(), cur.canonicalize());
        }

        #[test]
        fn minimalize_reaches_a_minimal_graph_with_a_replayable_trace(g in connected_graph_arb()) {
            let (m, trace) = minimalize(&g);
            prop_assert!(is_minimal(&m));
            prop_assert_eq!(trace.apply(&g).unwrap().canonicalize(), m.canonicalize());
            let (again, empty_trace) = minimalize(&m);
            prop_assert_eq!(again.canonicalize(), m.canonicalize());
            prop_assert!(empty_trace.is_empty());
        }

        #[test]
        fn rigid_chains_are_fixed_points_of_standardization(ws in rigid_chain_arb()) {
            let g = DualGraph::chain(&ws);
            let out = standardize_linear(&g).unwrap();
            prop_assert!(out.is_clean());
            prop_assert!(out.trace.is_empty());
            prop_assert_eq!(out.graph.canonicalize(), g.canonicalize());
        }

        #[test]
        fn standardization_is_idempotent_on_clean_outputs(
            ws in prop::collection::vec(-4i64..=2, 1..=6),
        ) {
            let g = DualGraph::chain(&ws);
            let first = standardize_linear(&g).unwrap();
            if first.is_clean() {
                let second = standardize_linear(&first.graph).unwrap();
                prop_assert!(second.is_clean());
                prop_assert!(second.trace.is_empty());
                prop_assert_eq!(second.graph.canonicalize(), first.graph.canonicalize());
            }
        }

        #[test]
        fn zigzag_class_survives_blow_up_noise(ws in zigzag_arb(), noise in noise_arb()) {
            let base = DualGraph::chain(&ws);
            let noisy = apply_noise(&base, &noise);
            let expected = classify(&base).unwrap();
            let got = classify(&noisy).unwrap();
            prop_assert_eq!(got.outcome, expected.outcome);
        }

        #[test]
        fn classification_does_not_depend_on_contraction_order(
            g in connected_graph_arb(),
            seed1 in prop::collection::vec(any::<u32>(), 16),
            seed2 in prop::collection::vec(any::<u32>(), 16),
        ) {
            let order = |seed: Vec<u32>| {
                let mut at = 0usize;
                move |cands: &[VertexId]| {
                    let i = (seed[at % seed.len()] as usize) % cands.len();
                    at += 1;
                    i
                }
            };
            let (m1, t1) = minimalize_with(&g, order(seed1));
            let (m2, t2) = minimalize_with(&g, order(seed2));
            prop_assert!(is_minimal(&m1) && is_minimal(&m2));
            prop_assert_eq!(t1.apply(&g).unwrap().canonicalize(), m1.canonicalize());
            prop_assert_eq!(t2.apply(&g).unwrap().canonicalize(), m2.canonicalize());
            let v1 = classify(&m1).unwrap();
            let v2 = classify(&m2).unwrap();
            match (&v1.outcome, &v2.outcome) {
                (Outcome::InList(f1), Outcome::InList(f2)) => prop_assert_eq!(f1, f2),
                (Outcome::NotInList(_), Outcome::NotInList(_)) => {}
                (a, b) => prop_assert!(false, "contraction order changed the verdict: {a:?} vs {b:?}"),
            }
        }

        #[test]
        fn contractibility_is_relabeling_invariant_and_witnessed((g, map) in graph_with_relabeling_arb()) {
            let relabeled = g.relabel(&map).unwrap();
            prop_assert_eq!(is_contractible(&g), is_contractible(&relabeled));
            if let Some(trace) = contraction_to_empty(&g) {
                prop_assert!(trace.apply(&g).unwrap().is_empty());
            }
            if greedy_contraction(&g, true).is_some() {
                prop_assert!(is_contractible(&g));
            }
        }
    }
}
