//! Ball-cover construction over one length scale and the scaling driver that
//! unions it over all scales with the preprocessing trees.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph, VertexSet};
use crate::radius::{build_e0, compute_radii, scaled_power, RadiusMap};
use crate::sssp::RoundtripSearch;

/// One iteration of a cover loop.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverStep {
    pub center: usize,
    pub step: f64,
    pub h: u32,
    /// Vertices (supervertices in the contracted phase) in the tree ball.
    pub ball_size: usize,
    /// Original vertices removed from the working set.
    pub removed_size: usize,
    pub tree_edges: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CoverTrace {
    pub iterations: Vec<CoverStep>,
    /// Distinct edges returned by the call.
    pub edges_added: usize,
}

impl CoverTrace {
    pub fn max_h(&self) -> u32 {
        self.iterations.iter().map(|s| s.h).max().unwrap_or(0)
    }

    /// Sum of per-iteration tree sizes (counts repeats).
    pub fn tree_edges(&self) -> usize {
        self.iterations.iter().map(|s| s.tree_edges).sum()
    }

    pub fn removed(&self) -> usize {
        self.iterations.iter().map(|s| s.removed_size).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Basic,
    Strong,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Basic => "basic",
            Algorithm::Strong => "strong",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "basic" => Ok(Algorithm::Basic),
            "strong" => Ok(Algorithm::Strong),
            other => Err(Error::Parameter(format!("unknown algorithm '{other}'"))),
        }
    }
}

/// Summary of one cover call at scale `L = (1 + epsilon)^p`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverSummary {
    pub p: u32,
    pub length: f64,
    pub iterations: usize,
    pub max_h: u32,
    pub tree_edges: usize,
    pub removed: usize,
    pub edges_added: usize,
}

impl CoverSummary {
    pub(crate) fn new(p: u32, length: f64, trace: &CoverTrace) -> Self {
        Self {
            p,
            length,
            iterations: trace.iterations.len(),
            max_h: trace.max_h(),
            tree_edges: trace.tree_edges(),
            removed: trace.removed(),
            edges_added: trace.edges_added,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpannerStats {
    /// The algorithm that actually produced the edges.
    pub algorithm: Algorithm,
    pub k: u32,
    pub epsilon: Option<f64>,
    pub p_iterations: u32,
    pub edge_count: usize,
    pub e0_edges: usize,
    pub hitting_set: Vec<usize>,
    pub covers: Vec<CoverSummary>,
}

impl SpannerStats {
    pub(crate) fn passthrough(algorithm: Algorithm, k: u32, edge_count: usize) -> Self {
        Self {
            algorithm,
            k,
            epsilon: None,
            p_iterations: 0,
            edge_count,
            e0_edges: 0,
            hitting_set: Vec::new(),
            covers: Vec::new(),
        }
    }

    pub fn max_h(&self) -> u32 {
        self.covers.iter().map(|c| c.max_h).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpannerResult {
    pub edges: EdgeSet,
    pub stats: SpannerStats,
}

/// Least `h >= 1` with `ball_size_at(h) < n^(h/k)`. Terminates because
/// `n^(h/k) > n` once `h > k`.
pub fn select_h(mut ball_size_at: impl FnMut(u32) -> usize, n: usize, k: u32) -> u32 {
    let mut h = 1;
    loop {
        if (ball_size_at(h) as f64) < scaled_power(n, h, k) {
            return h;
        }
        h += 1;
    }
}

pub(crate) fn check_k(k: u32) -> Result<()> {
    if k < 1 {
        return Err(Error::Parameter("k must be a positive integer".into()));
    }
    Ok(())
}

/// Scales `(1 + epsilon)^p` for `p = 0 ..= floor(log_{1+epsilon}(2nW)) + 1`.
pub fn scale_count(n: usize, max_weight: f64, epsilon: f64) -> u32 {
    let top = (2.0 * n as f64 * max_weight).ln() / epsilon.ln_1p();
    top.floor() as u32 + 2
}

/// Ball radius `h * step`. For `h <= k - 1` it is mathematically at most the
/// center's radius, so it is clamped there against rounding.
#[inline]
fn ball_radius(h: u32, step: f64, k: u32, center_radius: f64) -> f64 {
    let r = h as f64 * step;
    if h < k {
        r.min(center_radius)
    } else {
        r
    }
}

pub(crate) fn h_bound_violation(what: &str, center: usize, h: u32, k: u32) -> Error {
    Error::Invariant(format!("{what}: center {center} selected h = {h} > k - 1 = {}", k - 1))
}

pub(crate) fn check_step_size(step: &CoverStep, n: usize, k: u32, removed_units: usize) -> Result<()> {
    let tree_ok = step.tree_edges <= 2 * step.ball_size.saturating_sub(1);
    let ball_ok = (step.ball_size as f64) < scaled_power(n, 1, k) * removed_units as f64;
    if tree_ok && ball_ok {
        Ok(())
    } else {
        Err(Error::Invariant(format!(
            "size bound failed at center {}: {} tree edges, ball {}, removed {}",
            step.center, step.tree_edges, step.ball_size, removed_units
        )))
    }
}

/// The cover loop on `G[alive]`: repeatedly take the remaining vertex of
/// largest radius, grow trees over the first ball that is small relative to
/// `n^(h/k)`, and remove the closed ball one step inside it.
pub(crate) fn cover_loop(
    g: &Graph,
    radii: &RadiusMap,
    k: u32,
    length: f64,
    alive: &mut VertexSet,
    edges: &mut EdgeSet,
    trace: &mut CoverTrace,
) -> Result<()> {
    let n = g.n();
    for u in radii.processing_order() {
        if alive.is_empty() {
            break;
        }
        if !alive.contains(u) {
            continue;
        }
        let r_u = radii.get(u);
        let step = (r_u / (k - 1) as f64).min(length);
        let cap = ball_radius(k - 1, step, k, r_u);

        let view = g.induced(alive);
        let search = RoundtripSearch::run(&view, &[u], cap);
        let rt = search.roundtrip_all();
        let ball_at = |r: f64| search.tree_ball(&view, alive.iter(), r);

        let h = select_h(
            |h| {
                if h < k {
                    ball_at(ball_radius(h, step, k, r_u)).len()
                } else {
                    alive.len()
                }
            },
            n,
            k,
        );
        if h >= k {
            return Err(h_bound_violation("cover", u, h, k));
        }

        let radius = ball_radius(h, step, k, r_u);
        let ball = ball_at(radius);
        let trees = search.trees_to(&view, ball.iter().copied());
        let inner = ball_radius(h - 1, step, k, r_u);
        // Vertices the tree ball dropped for rounding stay alive; everything
        // else within the inner radius goes.
        let mut in_ball = vec![false; n];
        ball.iter().for_each(|&v| in_ball[v] = true);
        let removed: Vec<usize> = alive
            .iter()
            .filter(|&v| rt[v] <= inner && (in_ball[v] || rt[v] >= radius))
            .collect();

        let record = CoverStep {
            center: u,
            step,
            h,
            ball_size: ball.len(),
            removed_size: removed.len(),
            tree_edges: trees.len(),
        };
        check_step_size(&record, n, k, removed.len())?;
        trace.iterations.push(record);
        edges.union_with(&trees);
        for v in removed {
            alive.remove(v);
        }
    }
    Ok(())
}

/// One ball cover of all of `g` at length scale `length`.
pub fn cover(g: &Graph, radii: &RadiusMap, k: u32, length: f64) -> Result<(EdgeSet, CoverTrace)> {
    if k < 2 {
        return Err(Error::Parameter(format!("cover needs k >= 2, got {k}")));
    }
    if !(length > 0.0) {
        return Err(Error::Parameter(format!("length scale must be positive, got {length}")));
    }
    if radii.k != k || radii.r.len() != g.n() {
        return Err(Error::Precondition("radii were computed for another graph or k".into()));
    }
    let mut alive = VertexSet::full(g.n());
    let mut edges = EdgeSet::new();
    let mut trace = CoverTrace::default();
    cover_loop(g, radii, k, length, &mut alive, &mut edges, &mut trace)?;
    trace.edges_added = edges.len();
    Ok((edges, trace))
}

/// `(2k-1)`-stretch roundtrip spanner with `O(k n^(1+1/k) log(nW))` edges.
pub fn spanner_basic(g: &Graph, k: u32) -> Result<SpannerResult> {
    check_k(k)?;
    if k == 1 || g.n() <= 1 {
        let edges = if k == 1 { EdgeSet::all(g) } else { EdgeSet::new() };
        let count = edges.len();
        return Ok(SpannerResult {
            edges,
            stats: SpannerStats::passthrough(Algorithm::Basic, k, count),
        });
    }

    let radii = compute_radii(g, k)?;
    let (e0, hitting) = build_e0(g, &radii, k)?;
    let epsilon = 1.0 / (2 * k - 2) as f64;
    let scales = scale_count(g.n(), g.max_weight(), epsilon);

    let runs: Vec<(EdgeSet, CoverSummary)> = (0..scales)
        .into_par_iter()
        .map(|p| {
            let length = (1.0 + epsilon).powi(p as i32);
            let (edges, trace) = cover(g, &radii, k, length)?;
            Ok((edges, CoverSummary::new(p, length, &trace)))
        })
        .collect::<Result<_>>()?;

    let mut edges = e0.clone();
    let mut covers = Vec::with_capacity(runs.len());
    for (set, summary) in runs {
        edges.union_with(&set);
        covers.push(summary);
    }
    Ok(SpannerResult {
        stats: SpannerStats {
            algorithm: Algorithm::Basic,
            k,
            epsilon: Some(epsilon),
            p_iterations: scales,
            edge_count: edges.len(),
            e0_edges: e0.len(),
            hitting_set: hitting.members.to_vec(),
            covers,
        },
        edges,
    })
}
