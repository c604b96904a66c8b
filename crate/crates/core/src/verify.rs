//! Brute-force certification of spanner stretch and size.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph};
use crate::sssp::{path_forest, Direction, INFINITY};

/// Relative slack for comparing path sums accumulated in different orders.
pub const STRETCH_TOLERANCE: f64 = 1e-9;

/// Roundtrip distance matrix from `n` forward searches. Symmetric, zero
/// diagonal, `INFINITY` between different strongly connected components.
pub fn all_pairs_roundtrip(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.n();
    let view = g.view();
    let one_way: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|u| path_forest(&view, &[u], Direction::Forward, INFINITY).dist)
        .collect();
    (0..n)
        .map(|u| (0..n).map(|v| one_way[u][v] + one_way[v][u]).collect())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub u: usize,
    pub v: usize,
    pub d_graph: f64,
    pub d_spanner: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StretchReport {
    /// Largest `d_H / d_G` over pairs with finite `d_G` (1 when there are none).
    pub max_stretch: f64,
    pub argmax_pair: Option<(usize, usize)>,
    pub finite_pairs: usize,
    pub violations: Vec<Violation>,
    pub spanner_edges: usize,
    pub original_edges: usize,
}

impl StretchReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares all roundtrip distances of `(V, spanner)` against `g`. A pair
/// violates `bound` only if `d_H > bound * d_G * (1 + 1e-9)`.
pub fn verify_stretch(g: &Graph, spanner: &EdgeSet, bound: f64) -> Result<StretchReport> {
    let h = g.subgraph(spanner)?;
    let dg = all_pairs_roundtrip(g);
    let dh = all_pairs_roundtrip(&h);
    let n = g.n();

    let mut report = StretchReport {
        max_stretch: 1.0,
        argmax_pair: None,
        finite_pairs: 0,
        violations: Vec::new(),
        spanner_edges: spanner.len(),
        original_edges: g.m(),
    };
    for u in 0..n {
        for v in u + 1..n {
            let d = dg[u][v];
            if !d.is_finite() {
                continue;
            }
            report.finite_pairs += 1;
            let ratio = dh[u][v] / d;
            if report.argmax_pair.is_none() || ratio > report.max_stretch {
                report.max_stretch = ratio;
                report.argmax_pair = Some((u, v));
            }
            if dh[u][v] > bound * d * (1.0 + STRETCH_TOLERANCE) {
                report.violations.push(Violation {
                    u,
                    v,
                    d_graph: d,
                    d_spanner: dh[u][v],
                });
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SizeMode {
    /// `k n^(1+1/k) log2(nW)`
    Basic,
    /// `k n^(1+1/k) log2(n)`
    Strong,
}

/// Reference size `k n^(1+1/k) log2(nW)` (or `log2 n`) and the ratio of
/// `spanner_edges` to it. Constants are not specified, so there is no verdict.
pub fn verify_size(n: usize, max_weight: f64, k: u32, spanner_edges: usize, mode: SizeMode) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::Parameter(format!("size bound needs n >= 2, got {n}")));
    }
    if k < 1 {
        return Err(Error::Parameter("k must be a positive integer".into()));
    }
    let nf = n as f64;
    let log_term = match mode {
        SizeMode::Basic => (nf * max_weight).log2(),
        SizeMode::Strong => nf.log2(),
    };
    let bound = k as f64 * nf.powf(1.0 + 1.0 / k as f64) * log_term;
    Ok((bound, spanner_edges as f64 / bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeId;

    fn triangle() -> Graph {
        Graph::new(3, [(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)]).unwrap()
    }

    #[test]
    fn matrix_examples() {
        let m = all_pairs_roundtrip(&triangle());
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(m[u][v], if u == v { 0.0 } else { 3.0 });
            }
        }
        let two = Graph::new(2, [(0, 1, 2.0), (1, 0, 3.0)]).unwrap();
        assert_eq!(all_pairs_roundtrip(&two)[0][1], 5.0);
        let dag = Graph::new(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let m = all_pairs_roundtrip(&dag);
        assert!(m[0][1].is_infinite() && m[2][0].is_infinite() && m[1][2].is_infinite());
    }

    #[test]
    fn full_spanner_has_unit_stretch() {
        let g = triangle();
        let r = verify_stretch(&g, &EdgeSet::all(&g), 1.0).unwrap();
        assert_eq!(r.max_stretch, 1.0);
        assert_eq!(r.finite_pairs, 3);
        assert!(r.passed());
    }

    #[test]
    fn broken_cycle_is_infinite_stretch() {
        let g = triangle();
        let two: EdgeSet = [EdgeId(0), EdgeId(1)].into_iter().collect();
        let r = verify_stretch(&g, &two, 1e6).unwrap();
        assert_eq!(r.max_stretch, INFINITY);
        assert_eq!(r.violations.len(), 3);
        assert!(!r.passed());
    }

    #[test]
    fn foreign_edge_is_rejected() {
        let g = triangle();
        let bad: EdgeSet = [EdgeId(3)].into_iter().collect();
        assert!(matches!(verify_stretch(&g, &bad, 3.0), Err(Error::Containment(_))));
    }

    #[test]
    fn size_examples() {
        let (bound, ratio) = verify_size(100, 1.0, 2, 6644, SizeMode::Strong).unwrap();
        assert!((bound - 2.0 * 1000.0 * 100f64.log2()).abs() < 1e-9);
        assert!((bound - 13287.7).abs() < 0.1);
        assert!((ratio - 0.5).abs() < 1e-3);

        let (bound, ratio) = verify_size(2, 1.0, 2, 2, SizeMode::Basic).unwrap();
        assert!((bound - 5.656854).abs() < 1e-6);
        assert!((ratio - 0.353553).abs() < 1e-6);

        assert_eq!(verify_size(10, 5.0, 3, 0, SizeMode::Basic).unwrap().1, 0.0);
        assert!(verify_size(1, 1.0, 2, 0, SizeMode::Basic).is_err());
    }
}
