//! Dijkstra searches, roundtrip distances, roundtrip balls and in/out
//! shortest-path trees.
//!
//! All searches are deterministic: queue ties pop the smaller vertex id,
//! adjacency is scanned in increasing edge id, and a tentative distance is
//! only replaced by a strictly smaller one. As a consequence the parent of a
//! vertex settled below a radius cap does not depend on the cap.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use ordered_float::OrderedFloat;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, GraphView, VertexSet};

pub const INFINITY: f64 = f64::INFINITY;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Distances `d(source -> v)`.
    Forward,
    /// Distances `d(v -> source)`.
    Backward,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Forward,
    Backward,
    Roundtrip,
}

impl From<Direction> for MapKind {
    fn from(d: Direction) -> Self {
        match d {
            Direction::Forward => MapKind::Forward,
            Direction::Backward => MapKind::Backward,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DistanceMap {
    pub source: usize,
    pub kind: MapKind,
    /// `INFINITY` for unreached (or pruned) vertices.
    pub dist: Vec<f64>,
    /// Shortest-path tree edge of each reached vertex; `None` at the source,
    /// for unreached vertices and for roundtrip maps. In a forward map the
    /// edge enters `v`, in a backward map it leaves `v`.
    pub parent: Vec<Option<EdgeId>>,
}

impl DistanceMap {
    #[inline]
    pub fn get(&self, v: usize) -> f64 {
        self.dist[v]
    }
}

/// Shortest-path forest grown from one or more zero-distance roots.
#[derive(Clone, Debug)]
pub(crate) struct PathForest {
    pub dist: Vec<f64>,
    pub parent: Vec<Option<EdgeId>>,
    pub direction: Direction,
}

pub(crate) fn path_forest(view: &GraphView<'_>, roots: &[usize], direction: Direction, cap: f64) -> PathForest {
    let n = view.graph().n();
    let mut dist = vec![INFINITY; n];
    let mut parent = vec![None; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();

    for &r in roots {
        if view.contains(r) && dist[r] != 0.0 {
            dist[r] = 0.0;
            heap.push(Reverse((OrderedFloat(0.0), r)));
        }
    }

    while let Some(Reverse((OrderedFloat(d), v))) = heap.pop() {
        if settled[v] {
            continue;
        }
        settled[v] = true;
        let mut relax = |w: usize, id: EdgeId, weight: f64| {
            let nd = d + weight;
            if nd < cap && nd < dist[w] {
                dist[w] = nd;
                parent[w] = Some(id);
                heap.push(Reverse((OrderedFloat(nd), w)));
            }
        };
        match direction {
            Direction::Forward => view.out_edges(v).for_each(|(w, id, wt)| relax(w, id, wt)),
            Direction::Backward => view.in_edges(v).for_each(|(w, id, wt)| relax(w, id, wt)),
        }
    }

    PathForest {
        dist,
        parent,
        direction,
    }
}

impl PathForest {
    /// Adds the tree path between `v` and its root. Stops early at vertices
    /// already marked in `visited`.
    pub fn add_path(&self, view: &GraphView<'_>, mut v: usize, visited: &mut [bool], out: &mut EdgeSet) {
        let g = view.graph();
        while !visited[v] {
            visited[v] = true;
            let Some(id) = self.parent[v] else { break };
            out.insert(id);
            let e = g.edge(id);
            v = match self.direction {
                Direction::Forward => e.tail,
                Direction::Backward => e.head,
            };
        }
    }
}

fn check_source(view: &GraphView<'_>, source: usize) -> Result<()> {
    if view.contains(source) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("source vertex {source} is not in the view")))
    }
}

/// One-way distances from (forward) or to (backward) `source` inside `view`.
/// Vertices at distance `>= radius_cap` are not settled and read `INFINITY`.
pub fn dijkstra(view: &GraphView<'_>, source: usize, direction: Direction, radius_cap: f64) -> Result<DistanceMap> {
    check_source(view, source)?;
    let forest = path_forest(view, &[source], direction, radius_cap);
    Ok(DistanceMap {
        source,
        kind: direction.into(),
        dist: forest.dist,
        parent: forest.parent,
    })
}

/// Forward and backward search pair around a center, from which roundtrip
/// distances, balls and in/out trees are all read off.
#[derive(Clone, Debug)]
pub(crate) struct RoundtripSearch {
    pub out: PathForest,
    pub into: PathForest,
}

impl RoundtripSearch {
    pub fn run(view: &GraphView<'_>, roots: &[usize], cap: f64) -> Self {
        Self {
            out: path_forest(view, roots, Direction::Forward, cap),
            into: path_forest(view, roots, Direction::Backward, cap),
        }
    }

    #[inline]
    pub fn roundtrip(&self, v: usize) -> f64 {
        self.out.dist[v] + self.into.dist[v]
    }

    pub fn roundtrip_all(&self) -> Vec<f64> {
        (0..self.out.dist.len()).map(|v| self.roundtrip(v)).collect()
    }

    /// Vertices of `candidates` with roundtrip distance below `radius` whose
    /// parents in both trees also qualify. In exact arithmetic every tree
    /// path from a ball vertex stays in the ball, so this is the plain open
    /// ball; with rounding it drops the few boundary vertices whose paths
    /// would leave it.
    pub fn tree_ball(&self, view: &GraphView<'_>, candidates: impl Iterator<Item = usize>, radius: f64) -> Vec<usize> {
        let g = view.graph();
        let mut inside = vec![false; g.n()];
        let mut members: Vec<usize> = candidates.filter(|&v| self.roundtrip(v) < radius).collect();
        for &v in &members {
            inside[v] = true;
        }
        loop {
            let before = members.len();
            members.retain(|&v| {
                let out_ok = self.out.parent[v].is_none_or(|id| inside[g.edge(id).tail]);
                let in_ok = self.into.parent[v].is_none_or(|id| inside[g.edge(id).head]);
                inside[v] = out_ok && in_ok;
                inside[v]
            });
            if members.len() == before {
                return members;
            }
        }
    }

    /// Union of the outward and inward tree paths of every vertex in `targets`.
    pub fn trees_to(&self, view: &GraphView<'_>, targets: impl Iterator<Item = usize> + Clone) -> EdgeSet {
        let n = view.graph().n();
        let mut edges = EdgeSet::new();
        let mut visited = vec![false; n];
        for v in targets.clone() {
            self.out.add_path(view, v, &mut visited, &mut edges);
        }
        visited.iter_mut().for_each(|b| *b = false);
        for v in targets {
            self.into.add_path(view, v, &mut visited, &mut edges);
        }
        edges
    }
}

/// Roundtrip distances `d(u -> v) + d(v -> u)` inside `view`, exact below
/// `radius_cap` and `INFINITY` otherwise.
pub fn roundtrip_from(view: &GraphView<'_>, u: usize, radius_cap: f64) -> Result<DistanceMap> {
    check_source(view, u)?;
    let search = RoundtripSearch::run(view, &[u], radius_cap);
    let n = view.graph().n();
    Ok(DistanceMap {
        source: u,
        kind: MapKind::Roundtrip,
        dist: search.roundtrip_all(),
        parent: vec![None; n],
    })
}

/// Open (`d < radius`) or closed (`d <= radius`) roundtrip ball around `u`.
pub fn ball(view: &GraphView<'_>, u: usize, radius: f64, closed: bool) -> Result<VertexSet> {
    let cap = if closed { radius.next_up() } else { radius };
    let map = roundtrip_from(view, u, cap)?;
    let n = view.graph().n();
    let members = (0..n).filter(|&v| {
        let d = map.dist[v];
        if closed {
            d <= radius
        } else {
            d < radius
        }
    });
    Ok(VertexSet::from_members(n, members))
}

/// Edges of an outward and an inward shortest-path tree centered at `u`,
/// spanning the open ball of radius `radius`. Boundary vertices whose tree
/// paths leave the ball through rounding are left out, so the trees never
/// touch a vertex outside it.
pub fn in_out_trees(view: &GraphView<'_>, u: usize, radius: f64) -> Result<EdgeSet> {
    check_source(view, u)?;
    let search = RoundtripSearch::run(view, &[u], radius);
    let members = search.tree_ball(view, view.vertices(), radius);
    Ok(search.trees_to(view, members.into_iter()))
}
