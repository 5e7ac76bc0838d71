//! Geometric graphs `G(x_1, …, x_n; r)` and the graph metrics the rest of
//! the crate relies on.
//!
//! [`Graph`] is a plain undirected simple graph with sorted adjacency lists;
//! solvers and strategies work on it directly so that non-geometric inputs
//! (Petersen, cycles, random adjacency) go through the same code paths.
//! [`GeometricGraph`] adds the embedding and a grid index.

mod index;
pub mod io;

use std::collections::VecDeque;
use std::ops::Deref;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use index::GridIndex;

use crate::geometry::{Point2, EPS};

/// Marker for "unreachable" in BFS distance arrays.
pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("vertex {v} out of range for graph with {n} vertices")]
    BadVertex { v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("radius must be positive and finite, got {0}")]
    BadRadius(f64),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    pub points: Vec<Point2>,
    /// Optional declared bounding box `(min, max)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bbox: Option<(Point2, Point2)>,
}

impl PointSet {
    pub fn new(points: Vec<Point2>) -> Self {
        Self { points, bbox: None }
    }

    pub fn unit_square(points: Vec<Point2>) -> Self {
        Self { points, bbox: Some((Point2::new(0.0, 0.0), Point2::new(1.0, 1.0))) }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

impl From<Vec<Point2>> for PointSet {
    fn from(points: Vec<Point2>) -> Self {
        PointSet::new(points)
    }
}

/// Undirected simple graph with sorted neighbor lists.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self { adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::BadVertex { v: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self { adj })
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least three vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges).expect("valid cycle")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Self::from_edges(n, &edges).expect("valid clique")
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::from_edges(10, &edges).expect("valid Petersen graph")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// `u == v` or `u ~ v`: a legal single move.
    pub fn is_adjacent_or_equal(&self, u: usize, v: usize) -> bool {
        u == v || self.is_adjacent(u, v)
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::BadVertex { v, n: self.n() })
        }
    }

    /// `N̄(v) = {v} ∪ N(v)`, sorted.
    pub fn closed_neighborhood(&self, v: usize) -> Result<Vec<usize>, GraphError> {
        self.check_vertex(v)?;
        let mut out = Vec::with_capacity(self.adj[v].len() + 1);
        let split = self.adj[v].partition_point(|&w| w < v);
        out.extend_from_slice(&self.adj[v][..split]);
        out.push(v);
        out.extend_from_slice(&self.adj[v][split..]);
        Ok(out)
    }

    /// BFS distances from `src`; [`UNREACHABLE`] marks other components.
    pub fn bfs_distances(&self, src: usize) -> Vec<u32> {
        self.multi_source_bfs(std::iter::once(src))
    }

    pub fn multi_source_bfs(&self, sources: impl IntoIterator<Item = usize>) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.n()];
        let mut queue = VecDeque::new();
        for s in sources {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Shortest `u`–`v` path by BFS. Ties go to the lowest-index predecessor.
    pub fn shortest_path(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        self.shortest_path_in(u, v, |_| true)
    }

    /// Shortest path using only vertices accepted by `allowed` (the endpoints
    /// must be accepted too).
    pub fn shortest_path_in(
        &self,
        u: usize,
        v: usize,
        allowed: impl Fn(usize) -> bool,
    ) -> Option<Vec<usize>> {
        if !allowed(u) || !allowed(v) {
            return None;
        }
        // Distances from v; walking from u along the lowest-index neighbor that
        // is one step closer gives a canonical shortest path.
        let mut dist = vec![UNREACHABLE; self.n()];
        let mut queue = VecDeque::from([v]);
        dist[v] = 0;
        while let Some(x) = queue.pop_front() {
            if x == u {
                break;
            }
            for &w in &self.adj[x] {
                if dist[w] == UNREACHABLE && allowed(w) {
                    dist[w] = dist[x] + 1;
                    queue.push_back(w);
                }
            }
        }
        if dist[u] == UNREACHABLE {
            return None;
        }
        let mut path = vec![u];
        let mut cur = u;
        while cur != v {
            let next = self.adj[cur]
                .iter()
                .copied()
                .find(|&w| dist[w] != UNREACHABLE && dist[w] + 1 == dist[cur])
                .expect("BFS layer predecessor");
            path.push(next);
            cur = next;
        }
        Some(path)
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.bfs_distances(0).iter().all(|&d| d != UNREACHABLE)
    }

    /// Connected component labels, numbered in order of lowest vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut next = 0;
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// Induced subgraph on `keep` (in the given order) with the index map.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> =
                    self.adj[v].iter().filter(|&&w| pos[w] != usize::MAX).map(|&w| pos[w]).collect();
                list.sort_unstable();
                list
            })
            .collect();
        Graph { adj }
    }

    pub fn metrics(&self) -> GraphMetrics {
        graph_metrics(self)
    }
}

/// Distance value that may be infinite (disconnected / acyclic).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Extended {
    Finite(u32),
    #[serde(with = "infinite_tag")]
    Infinite,
}

mod infinite_tag {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str("infinite")
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        let s = String::deserialize(d)?;
        if s == "infinite" {
            Ok(())
        } else {
            Err(serde::de::Error::custom("expected \"infinite\""))
        }
    }
}

impl Extended {
    pub fn finite(self) -> Option<u32> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphMetrics {
    pub diameter: Extended,
    pub girth: Extended,
    pub min_degree: usize,
    pub connected: bool,
}

/// Exact diameter, girth, minimum degree and connectivity.
///
/// Girth comes from one BFS per root: a non-tree edge `(u, w)` closes a
/// cycle of length at most `dist[u] + dist[w] + 1`, and the minimum over all
/// roots is exact. Cost is `O(n · (n + m))`.
pub fn graph_metrics(g: &Graph) -> GraphMetrics {
    let n = g.n();
    let min_degree = (0..n).map(|v| g.degree(v)).min().unwrap_or(0);
    let mut diameter = 0u32;
    let mut connected = true;
    let mut girth = u32::MAX;
    let mut dist = vec![UNREACHABLE; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.fill(UNREACHABLE);
        parent.fill(usize::MAX);
        dist[root] = 0;
        queue.clear();
        queue.push_back(root);
        let mut reached = 1usize;
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    reached += 1;
                    queue.push_back(w);
                } else if parent[u] != w {
                    girth = girth.min(dist[u] + dist[w] + 1);
                }
            }
        }
        if reached < n {
            connected = false;
        } else {
            diameter = diameter.max(dist.iter().copied().max().unwrap_or(0));
        }
    }
    GraphMetrics {
        diameter: if connected { Extended::Finite(diameter) } else { Extended::Infinite },
        girth: if girth == u32::MAX { Extended::Infinite } else { Extended::Finite(girth) },
        min_degree,
        connected,
    }
}

/// Lower bound `c(G) ≥ δ(G)` for graphs with `δ ≥ 3` and girth at least 5;
/// returns the vacuous bound 1 otherwise.
pub fn degree_girth_lower_bound(g: &Graph) -> usize {
    let m = graph_metrics(g);
    match m.girth {
        Extended::Finite(girth) if girth < 5 => 1,
        _ if m.min_degree >= 3 => m.min_degree,
        _ => 1,
    }
}

/// Points plus radius, with adjacency `i ~ j ⇔ ‖x_i − x_j‖ ≤ r` (closed,
/// tolerance-inflated by [`EPS`]).
#[derive(Debug, Clone)]
pub struct GeometricGraph {
    pub pointset: PointSet,
    pub radius: f64,
    graph: Graph,
    index: GridIndex,
}

impl GeometricGraph {
    pub fn points(&self) -> &[Point2] {
        &self.pointset.points
    }

    pub fn point(&self, v: usize) -> Point2 {
        self.pointset.points[v]
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn index(&self) -> &GridIndex {
        &self.index
    }

    /// Vertices whose points lie within `radius` of `q`.
    pub fn vertices_within(&self, q: Point2, radius: f64) -> Vec<usize> {
        self.index.within(self.points(), q, radius, EPS)
    }

    /// Vertex nearest to `q` (lowest index on ties).
    pub fn nearest_vertex(&self, q: Point2) -> Option<usize> {
        let pts = self.points();
        let mut radius = self.index.cell_size();
        loop {
            let near = self.index.within(pts, q, radius, 0.0);
            if let Some(best) = near.into_iter().min_by(|&a, &b| {
                pts[a].dist_sq(q).total_cmp(&pts[b].dist_sq(q)).then(a.cmp(&b))
            }) {
                return Some(best);
            }
            if pts.is_empty() {
                return None;
            }
            radius *= 2.0;
        }
    }
}

impl Deref for GeometricGraph {
    type Target = Graph;
    fn deref(&self) -> &Graph {
        &self.graph
    }
}

/// Builds the geometric graph with grid bucketing (cell size `r`, 3×3
/// candidate block); expected cost `O(n + edges)`.
pub fn build_graph(ps: PointSet, r: f64) -> Result<GeometricGraph, GraphError> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(GraphError::BadRadius(r));
    }
    let pts = &ps.points;
    let index = GridIndex::new(pts, r);
    let lim = (r + EPS) * (r + EPS);
    let mut adj = vec![Vec::new(); pts.len()];
    for (i, &p) in pts.iter().enumerate() {
        index.candidates(p, r + EPS, |j| {
            if j > i && pts[j].dist_sq(p) <= lim {
                adj[i].push(j);
            }
        });
    }
    // Mirror the upper-triangular lists, then sort.
    for i in 0..adj.len() {
        for k in 0..adj[i].len() {
            let j = adj[i][k];
            if j > i {
                adj[j].push(i);
            }
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Ok(GeometricGraph { pointset: ps, radius: r, graph: Graph { adj }, index })
}
