mod common;

use common::{bellman_ford, floyd_warshall, integer_graph, real_graph, roundtrip_matrix};
use proptest::prelude::*;
use spanner_core::radius::{hitting_set_bound, rank_threshold};
use spanner_core::{
    all_pairs_roundtrip, ball, build_e0, compute_girths, compute_radii, contract, contracted_roundtrip_from, dijkstra,
    in_out_trees, new_in_out_trees, parse_graph, spanner_basic, spanner_strong, verify_stretch, write_graph,
    Direction, EdgeSet, Graph, ParseOptions, VertexSet, INFINITY,
};

fn subgraph_distances(g: &Graph, edges: &EdgeSet) -> Vec<Vec<f64>> {
    floyd_warshall(&g.subgraph(edges).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dijkstra_matches_floyd_warshall(g in integer_graph(10, 9)) {
        let fw = floyd_warshall(&g);
        let view = g.view();
        for s in 0..g.n() {
            let fwd = dijkstra(&view, s, Direction::Forward, INFINITY).unwrap();
            let bwd = dijkstra(&view, s, Direction::Backward, INFINITY).unwrap();
            for v in 0..g.n() {
                prop_assert_eq!(fwd.dist[v], fw[s][v]);
                prop_assert_eq!(bwd.dist[v], fw[v][s]);
            }
        }
    }

    #[test]
    fn capped_search_agrees_below_cap(g in integer_graph(10, 9), cap in 1.0f64..30.0) {
        let view = g.view();
        let full = dijkstra(&view, 0, Direction::Forward, INFINITY).unwrap();
        let capped = dijkstra(&view, 0, Direction::Forward, cap).unwrap();
        for v in 0..g.n() {
            if full.dist[v] < cap {
                prop_assert_eq!(capped.dist[v], full.dist[v]);
                prop_assert_eq!(capped.parent[v], full.parent[v]);
            } else {
                prop_assert!(capped.dist[v].is_infinite());
            }
        }
    }

    #[test]
    fn roundtrip_is_symmetric_metric(g in integer_graph(9, 9)) {
        let d = all_pairs_roundtrip(&g);
        prop_assert_eq!(&d, &roundtrip_matrix(&g));
        let n = g.n();
        for a in 0..n {
            prop_assert_eq!(d[a][a], 0.0);
            for b in 0..n {
                prop_assert_eq!(d[a][b], d[b][a]);
                for c in 0..n {
                    prop_assert!(d[a][c] <= d[a][b] + d[b][c]);
                }
            }
        }
    }

    #[test]
    fn balls_are_nested(g in integer_graph(10, 9), r1 in 0.0f64..20.0, dr in 0.0f64..20.0) {
        let view = g.view();
        let d = roundtrip_matrix(&g);
        let small = ball(&view, 0, r1, false).unwrap();
        let closed = ball(&view, 0, r1, true).unwrap();
        let big = ball(&view, 0, r1 + dr, false).unwrap();
        for v in 0..g.n() {
            prop_assert_eq!(small.contains(v), d[0][v] < r1);
            prop_assert_eq!(closed.contains(v), d[0][v] <= r1);
            prop_assert!(!small.contains(v) || closed.contains(v));
            prop_assert!(!small.contains(v) || big.contains(v));
        }
    }

    #[test]
    fn in_out_trees_preserve_ball_distances(g in integer_graph(10, 9), radius in 1.0f64..40.0) {
        let view = g.view();
        let d = floyd_warshall(&g);
        let members = ball(&view, 0, radius, false).unwrap();
        let trees = in_out_trees(&view, 0, radius).unwrap();
        prop_assert!(trees.len() <= 2 * (members.len() - 1));
        let dt = subgraph_distances(&g, &trees);
        for v in members.iter() {
            prop_assert_eq!(dt[0][v], d[0][v]);
            prop_assert_eq!(dt[v][0], d[v][0]);
        }
        for id in trees.iter() {
            let e = g.edge(id);
            prop_assert!(members.contains(e.tail) && members.contains(e.head));
        }
    }

    #[test]
    fn girths_match_bellman_ford(g in integer_graph(10, 9)) {
        let girths = compute_girths(&g);
        for (id, e) in g.edges() {
            prop_assert_eq!(girths.get(id), e.weight + bellman_ford(&g, e.head)[e.tail]);
        }
    }

    #[test]
    fn contraction_sandwich(g in real_graph(4, 14, 20.0), q in 0.0f64..1.0) {
        let girths = compute_girths(&g);
        let mut finite: Vec<f64> = g.edge_ids().map(|id| girths.get(id)).filter(|x| x.is_finite()).collect();
        finite.sort_by(f64::total_cmp);
        let ct = finite[((finite.len() - 1) as f64 * q) as usize];
        let cg = contract(&g, &girths, ct, INFINITY).unwrap();
        let d = all_pairs_roundtrip(&g);
        let full = VertexSet::full(g.n());
        for a in 0..cg.supervertex_count() {
            let dp = contracted_roundtrip_from(&g, &full, &cg, a, INFINITY).unwrap();
            for b in 0..cg.supervertex_count() {
                let dhat = cg.members[a]
                    .iter()
                    .flat_map(|&x| cg.members[b].iter().map(move |&y| (x, y)))
                    .map(|(x, y)| d[x][y])
                    .fold(INFINITY, f64::min);
                if a == b {
                    prop_assert_eq!(dp[b], 0.0);
                    continue;
                }
                prop_assert!(dp[b] <= dhat * (1.0 + 1e-9));
                prop_assert!(dhat <= (dp[b] + g.n() as f64 * ct) * (1.0 + 1e-9));
            }
            // Contracted trees keep at most one edge into and out of each supervertex.
            let trees = new_in_out_trees(&g, &full, &cg, a, 30.0).unwrap();
            let below = dp.iter().filter(|&&x| x < 30.0).count();
            prop_assert!(trees.len() <= 2 * (below - 1));
            for id in trees.iter() {
                let e = g.edge(id);
                prop_assert_ne!(cg.component_of[e.tail], cg.component_of[e.head]);
            }
        }
    }

    #[test]
    fn hitting_set_hits_every_ball(g in real_graph(2, 30, 50.0), k in 2u32..5) {
        let radii = compute_radii(&g, k).unwrap();
        let (_, hitting) = build_e0(&g, &radii, k).unwrap();
        let n = g.n();
        prop_assert!(hitting.members.len() <= hitting_set_bound(n, rank_threshold(n, k) - 1));
        let view = g.view();
        for u in 0..n {
            let r = radii.get(u);
            if r.is_finite() {
                let closed = ball(&view, u, r, true).unwrap();
                prop_assert!(closed.len() >= rank_threshold(n, k));
                prop_assert!(closed.iter().any(|v| hitting.members.contains(v)));
            }
        }
    }

    #[test]
    fn write_then_parse_is_identity(g in real_graph(1, 12, 1e6)) {
        let text = write_graph(&g, None);
        let back = parse_graph(text.as_bytes(), ParseOptions::default()).unwrap();
        prop_assert_eq!(write_graph(&back, None), text);
        for (id, e) in g.edges() {
            prop_assert_eq!(back.edge(id), e);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn spanners_have_bounded_stretch(g in real_graph(2, 26, 100.0), k in 2u32..5) {
        let bound = f64::from(2 * k - 1);
        for result in [spanner_basic(&g, k).unwrap(), spanner_strong(&g, k).unwrap()] {
            let report = verify_stretch(&g, &result.edges, bound).unwrap();
            prop_assert!(report.passed(), "{:?}", report.violations.first());
            prop_assert!(result.stats.max_h() < k);
            prop_assert_eq!(result.stats.edge_count, result.edges.len());
        }
    }

    #[test]
    fn construction_is_deterministic(g in real_graph(2, 20, 100.0), k in 2u32..4) {
        prop_assert_eq!(spanner_basic(&g, k).unwrap(), spanner_basic(&g, k).unwrap());
        prop_assert_eq!(spanner_strong(&g, k).unwrap(), spanner_strong(&g, k).unwrap());
    }

    #[test]
    fn adding_edges_never_hurts_stretch(g in real_graph(2, 16, 100.0), keep in prop::collection::vec(any::<bool>(), 80)) {
        let sparse: EdgeSet = g.edge_ids().filter(|id| keep[id.index() % keep.len()]).collect();
        let mut dense = sparse.clone();
        dense.union_with(&spanner_basic(&g, 2).unwrap().edges);
        let a = verify_stretch(&g, &sparse, 3.0).unwrap();
        let b = verify_stretch(&g, &dense, 3.0).unwrap();
        prop_assert!(b.max_stretch <= a.max_stretch);
        prop_assert!(b.violations.len() <= a.violations.len());
        prop_assert!(b.passed());
    }
}
