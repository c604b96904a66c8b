//! Directed multigraph with real weights in `[1, W]`, plus vertex/edge sets
//! and induced read-only views.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Stable identity of an edge: its position in the graph's edge list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub weight: f64,
}

/// Immutable directed multigraph. Self-loops and parallel edges are kept.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    max_weight: f64,
    // CSR adjacency; entries within a vertex are in increasing EdgeId order.
    out_start: Vec<usize>,
    out_adj: Vec<(usize, EdgeId)>,
    in_start: Vec<usize>,
    in_adj: Vec<(usize, EdgeId)>,
}

impl Graph {
    /// Builds a graph on vertices `0..n` from `(tail, head, weight)` triples.
    pub fn new(n: usize, triples: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        let mut edges = Vec::new();
        for (tail, head, weight) in triples {
            for v in [tail, head] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            // NaN fails this comparison as well.
            if !(weight >= 1.0) || weight.is_infinite() {
                return Err(Error::WeightDomain { weight });
            }
            edges.push(Edge { tail, head, weight });
        }
        Ok(Self::from_valid_edges(n, edges))
    }

    fn from_valid_edges(n: usize, edges: Vec<Edge>) -> Self {
        let max_weight = edges.iter().map(|e| e.weight).fold(1.0, f64::max);
        let (out_start, out_adj) = csr(n, edges.iter().map(|e| (e.tail, e.head)));
        let (in_start, in_adj) = csr(n, edges.iter().map(|e| (e.head, e.tail)));
        Self {
            n,
            edges,
            max_weight,
            out_start,
            out_adj,
            in_start,
            in_adj,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Maximum edge weight `W` (1 when there are no edges).
    #[inline]
    pub fn max_weight(&self) -> f64 {
        self.max_weight
    }

    #[inline]
    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id.0]
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &Edge)> + '_ {
        self.edges.iter().enumerate().map(|(i, e)| (EdgeId(i), e))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    /// `(head, edge)` pairs leaving `v`.
    #[inline]
    pub fn out_adj(&self, v: usize) -> &[(usize, EdgeId)] {
        &self.out_adj[self.out_start[v]..self.out_start[v + 1]]
    }

    /// `(tail, edge)` pairs entering `v`.
    #[inline]
    pub fn in_adj(&self, v: usize) -> &[(usize, EdgeId)] {
        &self.in_adj[self.in_start[v]..self.in_start[v + 1]]
    }

    /// The same vertex set with every edge reversed; edge ids are preserved.
    pub fn reversed(&self) -> Graph {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                tail: e.head,
                head: e.tail,
                weight: e.weight,
            })
            .collect();
        Self::from_valid_edges(self.n, edges)
    }

    /// The spanning subgraph `(V, edges)`. Edge ids are renumbered in
    /// increasing order of the original ids.
    pub fn subgraph(&self, edges: &EdgeSet) -> Result<Graph> {
        let mut kept = Vec::with_capacity(edges.len());
        for id in edges.iter() {
            let e = self
                .edges
                .get(id.0)
                .ok_or_else(|| Error::Containment(format!("{id} (graph has {} edges)", self.m())))?;
            kept.push(*e);
        }
        Ok(Self::from_valid_edges(self.n, kept))
    }

    /// A view that traverses the whole graph.
    pub fn view(&self) -> GraphView<'_> {
        GraphView {
            graph: self,
            alive: None,
            usable: None,
        }
    }

    /// Read-only view of the subgraph induced by `alive`.
    pub fn induced<'a>(&'a self, alive: &'a VertexSet) -> GraphView<'a> {
        GraphView {
            graph: self,
            alive: Some(alive),
            usable: None,
        }
    }

    /// Number of strongly connected components (iterative Tarjan).
    pub fn scc_count(&self) -> usize {
        const UNSEEN: usize = usize::MAX;
        let n = self.n;
        let mut index = vec![UNSEEN; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut call: Vec<(usize, usize)> = Vec::new();
        let mut next_index = 0;
        let mut count = 0;

        for root in 0..n {
            if index[root] != UNSEEN {
                continue;
            }
            call.push((root, 0));
            index[root] = next_index;
            low[root] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root] = true;

            while let Some(&mut (v, ref mut pos)) = call.last_mut() {
                let adj = self.out_adj(v);
                if *pos < adj.len() {
                    let w = adj[*pos].0;
                    *pos += 1;
                    if index[w] == UNSEEN {
                        index[w] = next_index;
                        low[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                    continue;
                }
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    count += 1;
                    while let Some(w) = stack.pop() {
                        on_stack[w] = false;
                        if w == v {
                            break;
                        }
                    }
                }
            }
        }
        count
    }
}

fn csr(n: usize, pairs: impl Iterator<Item = (usize, usize)> + Clone) -> (Vec<usize>, Vec<(usize, EdgeId)>) {
    let mut start = vec![0usize; n + 1];
    for (from, _) in pairs.clone() {
        start[from + 1] += 1;
    }
    for i in 0..n {
        start[i + 1] += start[i];
    }
    let mut fill = start.clone();
    let mut adj = vec![(0, EdgeId(0)); start[n]];
    for (i, (from, to)) in pairs.enumerate() {
        adj[fill[from]] = (to, EdgeId(i));
        fill[from] += 1;
    }
    (start, adj)
}

/// Read-only traversal view: skips vertices outside `alive` and edges
/// masked out by `usable`. Nothing is copied.
#[derive(Clone, Copy)]
pub struct GraphView<'a> {
    graph: &'a Graph,
    alive: Option<&'a VertexSet>,
    usable: Option<&'a [bool]>,
}

impl<'a> GraphView<'a> {
    /// Additionally hides every edge `e` with `usable[e] == false`.
    pub fn with_edge_mask(self, usable: &'a [bool]) -> Self {
        debug_assert_eq!(usable.len(), self.graph.m());
        Self {
            usable: Some(usable),
            ..self
        }
    }

    #[inline]
    pub fn graph(&self) -> &'a Graph {
        self.graph
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.graph.n && self.alive.is_none_or(|s| s.contains(v))
    }

    #[inline]
    fn edge_visible(&self, id: EdgeId) -> bool {
        self.usable.is_none_or(|u| u[id.0])
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.graph.n).filter(move |&v| self.contains(v))
    }

    /// Visible `(head, edge, weight)` triples leaving `v`.
    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = (usize, EdgeId, f64)> + '_ {
        let adj = if self.contains(v) { self.graph.out_adj(v) } else { &[] };
        adj.iter()
            .filter(move |&&(w, id)| self.contains(w) && self.edge_visible(id))
            .map(move |&(w, id)| (w, id, self.graph.edges[id.0].weight))
    }

    /// Visible `(tail, edge, weight)` triples entering `v`.
    pub fn in_edges(&self, v: usize) -> impl Iterator<Item = (usize, EdgeId, f64)> + '_ {
        let adj = if self.contains(v) { self.graph.in_adj(v) } else { &[] };
        adj.iter()
            .filter(move |&&(w, id)| self.contains(w) && self.edge_visible(id))
            .map(move |&(w, id)| (w, id, self.graph.edges[id.0].weight))
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, Edge)> + '_ {
        self.graph
            .edges()
            .filter(move |(id, e)| self.contains(e.tail) && self.contains(e.head) && self.edge_visible(*id))
            .map(|(id, e)| (id, *e))
    }
}

/// Subset of `0..universe` with O(1) membership.
#[derive(Clone, PartialEq, Eq)]
pub struct VertexSet {
    bits: Vec<bool>,
    len: usize,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        Self {
            bits: vec![false; universe],
            len: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        Self {
            bits: vec![true; universe],
            len: universe,
        }
    }

    pub fn from_members(universe: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(universe);
        for v in members {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.bits.get(v).copied().unwrap_or(false)
    }

    /// Returns true if `v` was newly inserted.
    pub fn insert(&mut self, v: usize) -> bool {
        if self.bits[v] {
            return false;
        }
        self.bits[v] = true;
        self.len += 1;
        true
    }

    /// Returns true if `v` was present.
    pub fn remove(&mut self, v: usize) -> bool {
        if !self.contains(v) {
            return false;
        }
        self.bits[v] = false;
        self.len -= 1;
        true
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Set of edge identities, iterated in increasing id order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeSet {
    members: BTreeSet<EdgeId>,
}

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every edge of `g`.
    pub fn all(g: &Graph) -> Self {
        g.edge_ids().collect()
    }

    pub fn insert(&mut self, id: EdgeId) -> bool {
        self.members.insert(id)
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        self.members.contains(&id)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.members.iter().copied()
    }

    pub fn union_with(&mut self, other: &EdgeSet) {
        self.members.extend(other.members.iter().copied());
    }
}

impl FromIterator<EdgeId> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = EdgeId>>(iter: I) -> Self {
        Self {
            members: iter.into_iter().collect(),
        }
    }
}

impl Extend<EdgeId> for EdgeSet {
    fn extend<I: IntoIterator<Item = EdgeId>>(&mut self, iter: I) {
        self.members.extend(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::new(3, [(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)]).unwrap()
    }

    #[test]
    fn build_two_cycle() {
        let g = Graph::new(2, [(0, 1, 2.0), (1, 0, 3.0)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.max_weight(), 3.0);
    }

    #[test]
    fn empty_edge_set_has_unit_max_weight() {
        let g = Graph::new(3, []).unwrap();
        assert_eq!(g.m(), 0);
        assert_eq!(g.max_weight(), 1.0);
    }

    #[test]
    fn rejects_light_edges_and_bad_vertices() {
        assert!(matches!(
            Graph::new(2, [(0, 1, 0.5)]),
            Err(Error::WeightDomain { .. })
        ));
        assert!(matches!(
            Graph::new(2, [(0, 2, 1.0)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
        assert!(Graph::new(2, [(0, 1, f64::NAN)]).is_err());
        assert!(Graph::new(2, [(0, 1, f64::INFINITY)]).is_err());
    }

    #[test]
    fn induced_view_drops_outside_edges() {
        let g = triangle();
        let u = VertexSet::from_members(3, [0, 1]);
        let edges: Vec<_> = g.induced(&u).edges().map(|(id, _)| id).collect();
        assert_eq!(edges, vec![EdgeId(0)]);

        let all = VertexSet::full(3);
        assert_eq!(g.induced(&all).edges().count(), 3);

        let none = VertexSet::empty(3);
        let view = g.induced(&none);
        assert_eq!(view.vertices().count(), 0);
        assert_eq!(view.edges().count(), 0);
        assert_eq!(view.out_edges(0).count(), 0);
    }

    #[test]
    fn edge_mask_hides_edges() {
        let g = triangle();
        let mask = [true, false, true];
        let view = g.view().with_edge_mask(&mask);
        assert_eq!(view.out_edges(1).count(), 0);
        assert_eq!(view.in_edges(2).count(), 0);
        assert_eq!(view.edges().count(), 2);
    }

    #[test]
    fn scc_counts() {
        assert_eq!(triangle().scc_count(), 1);
        let g = Graph::new(4, [(0, 1, 1.0), (1, 0, 1.0), (1, 2, 1.0), (3, 3, 1.0)]).unwrap();
        assert_eq!(g.scc_count(), 3);
        assert_eq!(Graph::new(0, []).unwrap().scc_count(), 0);
    }

    #[test]
    fn subgraph_rejects_foreign_edges() {
        let g = triangle();
        let bad: EdgeSet = [EdgeId(7)].into_iter().collect();
        assert!(matches!(g.subgraph(&bad), Err(Error::Containment(_))));
        let two: EdgeSet = [EdgeId(0), EdgeId(2)].into_iter().collect();
        let h = g.subgraph(&two).unwrap();
        assert_eq!(h.n(), 3);
        assert_eq!(h.m(), 2);
        assert_eq!(h.edge(EdgeId(1)).tail, 2);
    }

    #[test]
    fn vertex_set_bookkeeping() {
        let mut s = VertexSet::empty(5);
        assert!(s.insert(3));
        assert!(!s.insert(3));
        assert!(s.insert(1));
        assert_eq!(s.to_vec(), vec![1, 3]);
        assert!(s.remove(3));
        assert!(!s.remove(3));
        assert_eq!(s.len(), 1);
        assert!(!s.contains(17));
    }
}
