//! Per-vertex ball radii, the deterministic greedy hitting set over the
//! radius balls, and the preprocessing tree set `E0` rooted at its members.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph, VertexSet};
use crate::sssp::{path_forest, roundtrip_from, Direction, INFINITY};

/// `n^(num/den)`, snapped to the nearest integer when within `1e-9` of it.
pub fn scaled_power(n: usize, num: u32, den: u32) -> f64 {
    let x = (n as f64).powf(num as f64 / den as f64);
    let r = x.round();
    if (x - r).abs() <= 1e-9 {
        r
    } else {
        x
    }
}

/// `ceil(n^(1 - 1/k))`, the rank that defines `R(u)`.
pub fn rank_threshold(n: usize, k: u32) -> usize {
    scaled_power(n, k - 1, k).ceil() as usize
}

/// `ceil(n ln n / p)`, the hitting-set size guarantee for sets larger than `p`.
pub fn hitting_set_bound(n: usize, p: usize) -> usize {
    let n = n as f64;
    (n * n.ln() / p as f64).ceil() as usize
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadiusMap {
    /// `R(u)`, or `INFINITY` when fewer than `threshold` vertices have a
    /// finite roundtrip distance to `u`.
    pub r: Vec<f64>,
    pub k: u32,
    pub threshold: usize,
}

impl RadiusMap {
    #[inline]
    pub fn get(&self, u: usize) -> f64 {
        self.r[u]
    }

    /// Vertices by decreasing radius (infinite first), ties by smaller id.
    pub fn processing_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.r.len()).collect();
        order.sort_by(|&a, &b| self.r[b].total_cmp(&self.r[a]).then(a.cmp(&b)));
        order
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HittingSet {
    pub members: VertexSet,
}

/// Sorts every vertex by roundtrip distance to `u` and takes the distance of
/// the `ceil(n^(1-1/k))`-th one (1-indexed, `u` itself first).
pub fn compute_radii(g: &Graph, k: u32) -> Result<RadiusMap> {
    if k < 2 {
        return Err(Error::Parameter(format!("k must be at least 2 for radii, got {k}")));
    }
    let n = g.n();
    let threshold = rank_threshold(n, k);
    let view = g.view();
    let r = (0..n)
        .into_par_iter()
        .map(|u| {
            let map = roundtrip_from(&view, u, INFINITY).expect("vertex in full view");
            let mut finite: Vec<f64> = map.dist.into_iter().filter(|d| d.is_finite()).collect();
            if finite.len() < threshold {
                INFINITY
            } else {
                let (_, nth, _) = finite.select_nth_unstable_by(threshold - 1, f64::total_cmp);
                *nth
            }
        })
        .collect();
    Ok(RadiusMap { r, k, threshold })
}

/// Greedy hitting set: repeatedly take the vertex lying in the most sets not
/// yet hit (ties to the smaller id) until every set is hit.
pub fn hitting_set(n: usize, sets: &[VertexSet], p: usize) -> Result<HittingSet> {
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, s) in sets.iter().enumerate() {
        if s.len() <= p {
            return Err(Error::Precondition(format!(
                "set {i} has {} members, hitting sets need more than p = {p}",
                s.len()
            )));
        }
        for v in s.iter() {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            containing[v].push(i);
        }
    }

    let mut count: Vec<usize> = containing.iter().map(Vec::len).collect();
    let mut hit = vec![false; sets.len()];
    let mut remaining = sets.len();
    let mut members = VertexSet::empty(n);

    while remaining > 0 {
        // max_by_key keeps the last maximum, so scan in reverse to prefer small ids.
        let best = (0..n).rev().max_by_key(|&v| count[v]).expect("non-empty universe");
        members.insert(best);
        for &i in &containing[best] {
            if hit[i] {
                continue;
            }
            hit[i] = true;
            remaining -= 1;
            for v in sets[i].iter() {
                count[v] -= 1;
            }
        }
    }
    Ok(HittingSet { members })
}

/// The closed radius balls `{v : d(u <-> v) <= R(u)}` for every finite `R(u)`.
pub fn radius_balls(g: &Graph, radii: &RadiusMap) -> Vec<VertexSet> {
    let view = g.view();
    (0..g.n())
        .into_par_iter()
        .filter(|&u| radii.r[u].is_finite())
        .map(|u| crate::sssp::ball(&view, u, radii.r[u], true).expect("vertex in full view"))
        .collect()
}

/// Hitting set over the closed radius balls plus full inward and outward
/// shortest-path trees of `g` rooted at each of its members.
pub fn build_e0(g: &Graph, radii: &RadiusMap, k: u32) -> Result<(EdgeSet, HittingSet)> {
    if radii.k != k {
        return Err(Error::Precondition(format!(
            "radii were computed for k = {}, not k = {k}",
            radii.k
        )));
    }
    let n = g.n();
    let balls = radius_balls(g, radii);
    let p = radii.threshold.saturating_sub(1);
    let hitting = hitting_set(n, &balls, p)?;

    let view = g.view();
    let roots = hitting.members.to_vec();
    let per_root: Vec<EdgeSet> = roots
        .par_iter()
        .map(|&t| {
            let mut edges = EdgeSet::new();
            for dir in [Direction::Forward, Direction::Backward] {
                let forest = path_forest(&view, &[t], dir, INFINITY);
                edges.extend(forest.parent.iter().flatten().copied());
            }
            edges
        })
        .collect();
    let mut e0 = EdgeSet::new();
    for s in &per_root {
        e0.union_with(s);
    }
    Ok((e0, hitting))
}
