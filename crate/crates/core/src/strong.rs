//! Weight-independent construction: edge girths, per-scale contraction of
//! short cycles, the two-phase cover and the driver over all scales.
//!
//! Distances between supervertices are roundtrip quantities. The exact
//! member-pair minimum `d^` would need one search per member; instead a
//! multi-source forward and a multi-sink backward search from the center's
//! component give `d^'`, with `d^' <= d^ <= d^' + n * (L / n^3)`. That slack
//! is the `L / n^2` that `step = (1 + 1/n^2) L` leaves room for.

use rayon::prelude::*;

use crate::cover::{
    check_k, check_step_size, cover_loop, h_bound_violation, scale_count, select_h, spanner_basic, Algorithm,
    CoverStep, CoverSummary, CoverTrace, SpannerResult, SpannerStats,
};
use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, Graph, GraphView, VertexSet};
use crate::radius::{build_e0, compute_radii, RadiusMap};
use crate::sssp::{path_forest, Direction, RoundtripSearch, INFINITY};

/// Smallest instance on which the contracted construction is used; smaller
/// graphs (or `k > n`) go through [`spanner_basic`].
pub const MIN_STRONG_VERTICES: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct GirthMap {
    /// Length of the shortest directed cycle through each edge.
    pub g: Vec<f64>,
}

impl GirthMap {
    #[inline]
    pub fn get(&self, e: EdgeId) -> f64 {
        self.g[e.index()]
    }

    /// Smallest and largest finite girth.
    pub fn finite_range(&self) -> Option<(f64, f64)> {
        let mut it = self.g.iter().copied().filter(|x| x.is_finite());
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }
}

/// `g(e) = w(e) + d(head -> tail)`, from one backward search per distinct tail.
pub fn compute_girths(g: &Graph) -> GirthMap {
    let view = g.view();
    let per_tail: Vec<Vec<(EdgeId, f64)>> = (0..g.n())
        .into_par_iter()
        .filter(|&u| !g.out_adj(u).is_empty())
        .map(|u| {
            let back = path_forest(&view, &[u], Direction::Backward, INFINITY);
            g.out_adj(u)
                .iter()
                .map(|&(v, id)| (id, g.edge(id).weight + back.dist[v]))
                .collect()
        })
        .collect();
    let mut girth = vec![INFINITY; g.m()];
    for (id, x) in per_tail.into_iter().flatten() {
        girth[id.index()] = x;
    }
    GirthMap { g: girth }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuperEdge {
    pub tail: usize,
    pub head: usize,
    pub weight: f64,
    pub edge: EdgeId,
}

/// Quotient of `g` by the edges of girth at most `contract_threshold`.
#[derive(Clone, Debug)]
pub struct ContractedGraph {
    pub component_of: Vec<usize>,
    /// Members of each supervertex, ascending.
    pub members: Vec<Vec<usize>>,
    pub super_edges: Vec<SuperEdge>,
    pub contract_threshold: f64,
    pub delete_threshold: f64,
    /// Edges the supervertex searches may traverse: finite girth no larger
    /// than `delete_threshold`.
    usable: Vec<bool>,
}

impl ContractedGraph {
    pub fn supervertex_count(&self) -> usize {
        self.members.len()
    }

    pub fn usable(&self, e: EdgeId) -> bool {
        self.usable[e.index()]
    }

    /// Quotient with an explicit partition; every finite-girth edge usable.
    #[cfg(test)]
    pub(crate) fn from_partition(g: &Graph, girths: &GirthMap, component_of: Vec<usize>) -> Self {
        let count = component_of.iter().max().map_or(0, |&c| c + 1);
        let mut members = vec![Vec::new(); count];
        for (v, &c) in component_of.iter().enumerate() {
            members[c].push(v);
        }
        let usable: Vec<bool> = girths.g.iter().map(|x| x.is_finite()).collect();
        let super_edges = g
            .edges()
            .filter(|(id, e)| usable[id.index()] && component_of[e.tail] != component_of[e.head])
            .map(|(id, e)| SuperEdge {
                tail: component_of[e.tail],
                head: component_of[e.head],
                weight: e.weight,
                edge: id,
            })
            .collect();
        Self {
            component_of,
            members,
            super_edges,
            contract_threshold: 0.0,
            delete_threshold: INFINITY,
            usable,
        }
    }

    fn view<'a>(&'a self, g: &'a Graph, alive: &'a VertexSet) -> GraphView<'a> {
        g.induced(alive).with_edge_mask(&self.usable)
    }
}

/// Joins the endpoints of every edge with `g(e) <= contract_threshold` and
/// keeps the edges with `contract_threshold < g(e) <= delete_threshold`
/// between different components. Edges on no cycle are always dropped.
pub fn contract(
    g: &Graph,
    girths: &GirthMap,
    contract_threshold: f64,
    delete_threshold: f64,
) -> Result<ContractedGraph> {
    if !(contract_threshold <= delete_threshold) {
        return Err(Error::Precondition(format!(
            "contract threshold {contract_threshold} exceeds delete threshold {delete_threshold}"
        )));
    }
    if girths.g.len() != g.m() {
        return Err(Error::Precondition("girth map does not match the graph".into()));
    }
    let mut dsu = DisjointSets::new(g.n());
    for (id, e) in g.edges() {
        if girths.get(id) <= contract_threshold {
            dsu.union(e.tail, e.head);
        }
    }
    let (component_of, count) = dsu.labels();
    let mut members = vec![Vec::new(); count];
    for (v, &c) in component_of.iter().enumerate() {
        members[c].push(v);
    }

    let usable: Vec<bool> = girths
        .g
        .iter()
        .map(|&x| x.is_finite() && x <= delete_threshold)
        .collect();
    let super_edges = g
        .edges()
        .filter(|(id, e)| {
            let x = girths.get(*id);
            usable[id.index()] && x > contract_threshold && component_of[e.tail] != component_of[e.head]
        })
        .map(|(id, e)| SuperEdge {
            tail: component_of[e.tail],
            head: component_of[e.head],
            weight: e.weight,
            edge: id,
        })
        .collect();

    Ok(ContractedGraph {
        component_of,
        members,
        super_edges,
        contract_threshold,
        delete_threshold,
        usable,
    })
}

/// Forward and backward searches rooted at every member of one supervertex.
struct ContractedSearch {
    search: RoundtripSearch,
    /// `(d^', member attaining it)` per supervertex.
    best: Vec<(f64, usize)>,
}

impl ContractedSearch {
    fn run(view: &GraphView<'_>, cg: &ContractedGraph, up: usize, cap: f64) -> Self {
        let search = RoundtripSearch::run(view, &cg.members[up], cap);
        let mut best = vec![(INFINITY, usize::MAX); cg.supervertex_count()];
        for v in view.vertices() {
            let d = search.roundtrip(v);
            let slot = &mut best[cg.component_of[v]];
            if d < slot.0 {
                *slot = (d, v);
            }
        }
        Self { search, best }
    }

    fn distances(&self) -> Vec<f64> {
        self.best.iter().map(|&(d, _)| d).collect()
    }

    /// Tree paths to the best member of every supervertex below `radius`,
    /// keeping only inter-component edges and, per supervertex, a single
    /// entering outward edge and a single leaving inward edge: the one at
    /// the member closest to the root.
    fn trees(&self, view: &GraphView<'_>, cg: &ContractedGraph, radius: f64) -> EdgeSet {
        let g = view.graph();
        let n = g.n();
        let targets: Vec<usize> = self
            .best
            .iter()
            .filter(|&&(d, _)| d < radius)
            .map(|&(_, v)| v)
            .collect();

        let mut out = EdgeSet::new();
        let mut visited = vec![false; n];
        for &v in &targets {
            self.search.out.add_path(view, v, &mut visited, &mut out);
        }
        let mut into = EdgeSet::new();
        visited.iter_mut().for_each(|b| *b = false);
        for &v in &targets {
            self.search.into.add_path(view, v, &mut visited, &mut into);
        }

        let supers = cg.supervertex_count();
        let mut enter: Vec<Option<(f64, EdgeId)>> = vec![None; supers];
        for id in out.iter() {
            let e = g.edge(id);
            let (a, b) = (cg.component_of[e.tail], cg.component_of[e.head]);
            if a != b {
                let key = (self.search.out.dist[e.head], id);
                keep_min(&mut enter[b], key);
            }
        }
        let mut leave: Vec<Option<(f64, EdgeId)>> = vec![None; supers];
        for id in into.iter() {
            let e = g.edge(id);
            let (a, b) = (cg.component_of[e.tail], cg.component_of[e.head]);
            if a != b {
                let key = (self.search.into.dist[e.tail], id);
                keep_min(&mut leave[a], key);
            }
        }
        enter
            .into_iter()
            .chain(leave)
            .flatten()
            .map(|(_, id)| id)
            .collect()
    }
}

fn keep_min(slot: &mut Option<(f64, EdgeId)>, key: (f64, EdgeId)) {
    let better = match *slot {
        None => true,
        Some((d, id)) => key.0 < d || (key.0 == d && key.1 < id),
    };
    if better {
        *slot = Some(key);
    }
}

fn check_alive_component(alive: &VertexSet, cg: &ContractedGraph, up: usize) -> Result<()> {
    let members = cg
        .members
        .get(up)
        .ok_or_else(|| Error::Precondition(format!("no supervertex {up}")))?;
    if members.iter().all(|&v| alive.contains(v)) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("supervertex {up} is not fully alive")))
    }
}

/// `d^'(v_p)` for every supervertex, `INFINITY` at and beyond `radius_cap`
/// or when no member is alive.
pub fn contracted_roundtrip_from(
    g: &Graph,
    u_alive: &VertexSet,
    cg: &ContractedGraph,
    up: usize,
    radius_cap: f64,
) -> Result<Vec<f64>> {
    check_alive_component(u_alive, cg, up)?;
    let view = cg.view(g, u_alive);
    Ok(ContractedSearch::run(&view, cg, up, radius_cap).distances())
}

/// In/out trees of the supervertex `up` over the supervertices with
/// `d^' < radius`, with intra-component edges and duplicates removed.
pub fn new_in_out_trees(g: &Graph, u_alive: &VertexSet, cg: &ContractedGraph, up: usize, radius: f64) -> Result<EdgeSet> {
    check_alive_component(u_alive, cg, up)?;
    let view = cg.view(g, u_alive);
    Ok(ContractedSearch::run(&view, cg, up, radius).trees(&view, cg, radius))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StrongOptions {
    /// Drop edges of girth above `2(k-1)L` from each scale's quotient.
    pub delete_long_edges: bool,
}

impl Default for StrongOptions {
    fn default() -> Self {
        Self {
            delete_long_edges: true,
        }
    }
}

pub fn cover2(
    g: &Graph,
    radii: &RadiusMap,
    girths: &GirthMap,
    k: u32,
    p: u32,
    epsilon: f64,
) -> Result<(EdgeSet, CoverTrace)> {
    cover2_with(g, radii, girths, k, p, epsilon, &StrongOptions::default())
}

/// Two-phase cover at scale `L = (1 + epsilon)^p`. Vertices with
/// `R(u) >= 2(k-1)L` are covered on the quotient by short-girth edges with
/// `step = (1 + 1/n^2)L`; the rest, minus those with `R(u) < L/8`, go
/// through the plain cover loop on the uncontracted graph.
pub fn cover2_with(
    g: &Graph,
    radii: &RadiusMap,
    girths: &GirthMap,
    k: u32,
    p: u32,
    epsilon: f64,
    opts: &StrongOptions,
) -> Result<(EdgeSet, CoverTrace)> {
    if k < 2 {
        return Err(Error::Parameter(format!("cover2 needs k >= 2, got {k}")));
    }
    if !(epsilon > 0.0) {
        return Err(Error::Parameter(format!("epsilon must be positive, got {epsilon}")));
    }
    if radii.k != k || radii.r.len() != g.n() || girths.g.len() != g.m() {
        return Err(Error::Precondition("radii or girths were computed for another graph or k".into()));
    }
    let n = g.n();
    let nf = n as f64;
    let length = (1.0 + epsilon).powi(p as i32);
    let long = 2.0 * (k - 1) as f64 * length;
    let delete_threshold = if opts.delete_long_edges { long } else { INFINITY };
    let cg = contract(g, girths, length / (nf * nf * nf), delete_threshold)?;

    let mut alive = VertexSet::full(n);
    let mut super_alive = vec![true; cg.supervertex_count()];
    let mut alive_supers = cg.supervertex_count();
    let mut edges = EdgeSet::new();
    let mut trace = CoverTrace::default();
    let step = (1.0 + 1.0 / (nf * nf)) * length;
    let order = radii.processing_order();

    for &u in &order {
        if alive.is_empty() || !(radii.get(u) >= long) {
            break;
        }
        if !alive.contains(u) {
            continue;
        }
        let up = cg.component_of[u];
        let view = cg.view(g, &alive);
        let search = ContractedSearch::run(&view, &cg, up, (k - 1) as f64 * step);
        let dhat = search.distances();
        let count_below = |r: f64| {
            (0..dhat.len())
                .filter(|&c| super_alive[c] && dhat[c] < r)
                .count()
        };
        let h = select_h(
            |h| {
                if h < k {
                    count_below(h as f64 * step)
                } else {
                    alive_supers
                }
            },
            n,
            k,
        );
        if h >= k {
            return Err(h_bound_violation("cover2 contracted phase", u, h, k));
        }
        let radius = h as f64 * step;
        let trees = search.trees(&view, &cg, radius);
        let inner = (h - 1) as f64 * step;
        let removed: Vec<usize> = (0..dhat.len())
            .filter(|&c| super_alive[c] && dhat[c] <= inner)
            .collect();

        let removed_vertices: usize = removed.iter().map(|&c| cg.members[c].len()).sum();
        let record = CoverStep {
            center: u,
            step,
            h,
            ball_size: count_below(radius),
            removed_size: removed_vertices,
            tree_edges: trees.len(),
        };
        check_step_size(&record, n, k, removed.len())?;
        trace.iterations.push(record);
        edges.union_with(&trees);
        for c in removed {
            super_alive[c] = false;
            alive_supers -= 1;
            for &v in &cg.members[c] {
                alive.remove(v);
            }
        }
    }

    for u in 0..n {
        if radii.get(u) < length / 8.0 {
            alive.remove(u);
        }
    }
    cover_loop(g, radii, k, length, &mut alive, &mut edges, &mut trace)?;
    trace.edges_added = edges.len();
    Ok((edges, trace))
}

pub fn spanner_strong(g: &Graph, k: u32) -> Result<SpannerResult> {
    spanner_strong_with(g, k, &StrongOptions::default())
}

/// `(2k-1)`-stretch roundtrip spanner with `O(k n^(1+1/k) log n)` edges.
/// Instances with `n < 12` or `k > n` are delegated to [`spanner_basic`].
pub fn spanner_strong_with(g: &Graph, k: u32, opts: &StrongOptions) -> Result<SpannerResult> {
    check_k(k)?;
    let n = g.n();
    if k == 1 {
        let edges = EdgeSet::all(g);
        let stats = SpannerStats::passthrough(Algorithm::Strong, k, edges.len());
        return Ok(SpannerResult { edges, stats });
    }
    if n < MIN_STRONG_VERTICES || k as usize > n {
        return spanner_basic(g, k);
    }

    let radii = compute_radii(g, k)?;
    let (e0, hitting) = build_e0(g, &radii, k)?;
    let girths = compute_girths(g);
    let epsilon = 1.0 / (4 * (k - 1)) as f64;
    let scales = scale_count(n, g.max_weight(), epsilon);

    let runs: Vec<(EdgeSet, CoverSummary)> = (0..scales)
        .into_par_iter()
        .map(|p| {
            let (edges, trace) = cover2_with(g, &radii, &girths, k, p, epsilon, opts)?;
            Ok((edges, CoverSummary::new(p, (1.0 + epsilon).powi(p as i32), &trace)))
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
            algorithm: Algorithm::Strong,
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
