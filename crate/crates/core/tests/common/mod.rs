//! Independent reference implementations shared by the integration tests.

#![allow(dead_code)]

use proptest::prelude::*;
use spanner_core::Graph;

/// All-pairs one-way distances by Floyd-Warshall.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0.0;
    }
    for (_, e) in g.edges() {
        if e.weight < d[e.tail][e.head] {
            d[e.tail][e.head] = e.weight;
        }
    }
    for m in 0..n {
        for a in 0..n {
            for b in 0..n {
                let via = d[a][m] + d[m][b];
                if via < d[a][b] {
                    d[a][b] = via;
                }
            }
        }
    }
    d
}

pub fn roundtrip_matrix(g: &Graph) -> Vec<Vec<f64>> {
    let d = floyd_warshall(g);
    let n = g.n();
    (0..n).map(|u| (0..n).map(|v| d[u][v] + d[v][u]).collect()).collect()
}

/// Bellman-Ford from `source` over `g`.
pub fn bellman_ford(g: &Graph, source: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; g.n()];
    dist[source] = 0.0;
    for _ in 0..g.n() {
        let mut changed = false;
        for (_, e) in g.edges() {
            if dist[e.tail] + e.weight < dist[e.head] {
                dist[e.head] = dist[e.tail] + e.weight;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    dist
}

/// Graphs with integer weights, so every path sum is exact and oracle
/// comparisons can use `==`.
pub fn integer_graph(max_n: usize, max_w: u32) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(move |n| {
        let edge = (0..n, 0..n, 1..=max_w);
        prop::collection::vec(edge, 0..=n * n.min(6)).prop_map(move |es| {
            Graph::new(n, es.into_iter().map(|(a, b, w)| (a, b, f64::from(w)))).unwrap()
        })
    })
}

/// Graphs with real weights in `[1, max_w]`, biased towards having cycles.
pub fn real_graph(min_n: usize, max_n: usize, max_w: f64) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(move |n| {
        let edge = (0..n, 0..n, 1.0..=max_w);
        prop::collection::vec(edge, n..=n * 5).prop_map(move |es| {
            let cycle = (0..n).map(|v| (v, (v + 1) % n, max_w));
            Graph::new(n, es.into_iter().chain(cycle)).unwrap()
        })
    })
}
