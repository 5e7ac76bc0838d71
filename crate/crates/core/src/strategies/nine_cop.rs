//! Nine cops in three patrol triples shrinking the robber territory.
//!
//! The territory is the robber's component once the vertices of every
//! patrolled path, and every edge whose segment crosses a patrolled path,
//! are removed. At most two patrolled paths are kept; the free triple
//! establishes a shortest path through the territory between two of its
//! boundary vertices, after which paths that no longer bound the territory
//! are released.

use std::collections::HashSet;

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::engine::{CopPolicy, PolicyError, View};
use super::patrol::{with_captures, PatrolTriple};
use super::path_control::PathController;
use crate::geograph::{GeometricGraph, Graph, UNREACHABLE};
use crate::geometry::{segments_intersect, Segment};

/// Caps the boundary vertices tried as path endpoints.
const MAX_ENDPOINTS: usize = 40;

#[derive(Debug, Clone)]
struct Barrier {
    path: Vec<usize>,
    on_path: Vec<bool>,
    crossing: HashSet<(usize, usize)>,
}

impl Barrier {
    fn new(g: &GeometricGraph, path: Vec<usize>) -> Self {
        let mut on_path = vec![false; g.n()];
        for &v in &path {
            on_path[v] = true;
        }
        let pts = g.points();
        let segs: Vec<Segment> = path.windows(2).map(|e| Segment::new(pts[e[0]], pts[e[1]])).collect();
        let mut crossing = HashSet::new();
        if !segs.is_empty() {
            for (u, w) in g.edges() {
                if on_path[u] || on_path[w] {
                    continue;
                }
                let e = Segment::new(pts[u], pts[w]);
                if segs.iter().any(|s| segments_intersect(&e, s)) {
                    crossing.insert((u, w));
                }
            }
        }
        Self { path, on_path, crossing }
    }

    fn blocks_edge(&self, u: usize, w: usize) -> bool {
        self.crossing.contains(&(u.min(w), u.max(w)))
    }
}

/// Vertices reachable from `start` avoiding the barriers.
fn region(g: &Graph, barriers: &[&Barrier], start: usize) -> Vec<usize> {
    if barriers.iter().any(|b| b.on_path[start]) {
        return Vec::new();
    }
    let mut seen = vec![false; g.n()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut out = Vec::new();
    while let Some(u) = stack.pop() {
        out.push(u);
        for &w in g.neighbors(u) {
            if !seen[w] && !barriers.iter().any(|b| b.on_path[w] || b.blocks_edge(u, w)) {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    out.sort_unstable();
    out
}

/// BFS distances from `src` inside `allowed`, skipping blocked edges.
fn restricted_bfs(g: &Graph, barriers: &[&Barrier], allowed: &[bool], src: usize) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; g.n()];
    dist[src] = 0;
    let mut queue = std::collections::VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == UNREACHABLE && allowed[w] && !barriers.iter().any(|b| b.blocks_edge(u, w)) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Canonical path from `a` to `b` following `dist` (distances from `a`).
fn path_from_dist(g: &Graph, barriers: &[&Barrier], allowed: &[bool], dist: &[u32], b: usize) -> Vec<usize> {
    let mut path = vec![b];
    let mut cur = b;
    while dist[cur] > 0 {
        cur = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| {
                allowed[w] && dist[w] != UNREACHABLE && dist[w] + 1 == dist[cur] && !barriers.iter().any(|x| x.blocks_edge(cur, w))
            })
            .expect("BFS predecessor");
        path.push(cur);
    }
    path.reverse();
    path
}

#[derive(Debug, Clone)]
enum Role {
    Idle,
    Establishing(PatrolTriple, Barrier),
    Patrolling(PatrolTriple, Barrier),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerritorySnapshot {
    pub round: usize,
    pub territory: usize,
    pub patrolled_paths: usize,
    /// Paths released in this stage.
    pub released: usize,
    /// The stage needed a third path and one had to be dropped.
    pub forced_release: bool,
}

pub struct NineCop<'a> {
    g: &'a GeometricGraph,
    roles: [Role; 3],
    territory: Option<Vec<usize>>,
    snapshots: Vec<TerritorySnapshot>,
}

impl<'a> NineCop<'a> {
    pub fn new(g: &'a GeometricGraph) -> Self {
        Self { g, roles: [Role::Idle, Role::Idle, Role::Idle], territory: None, snapshots: Vec::new() }
    }

    /// Territory sizes recorded each time a new path was positioned.
    pub fn snapshots(&self) -> &[TerritorySnapshot] {
        &self.snapshots
    }

    pub fn territory(&self) -> Option<&[usize]> {
        self.territory.as_deref()
    }

    fn first_path(&self) -> Vec<usize> {
        let g = self.g.graph();
        let d0 = g.bfs_distances(0);
        let far = |d: &[u32]| (0..g.n()).filter(|&v| d[v] != UNREACHABLE).max_by_key(|&v| (d[v], std::cmp::Reverse(v)));
        let a = far(&d0).unwrap_or(0);
        let da = g.bfs_distances(a);
        let b = far(&da).unwrap_or(a);
        g.shortest_path(a, b).expect("same component")
    }

    fn barriers(&self) -> Vec<&Barrier> {
        self.roles
            .iter()
            .filter_map(|r| match r {
                Role::Patrolling(_, b) => Some(b),
                _ => None,
            })
            .collect()
    }

    fn on_positioned(&mut self, round: usize, robber: usize) {
        for role in &mut self.roles {
            if let Role::Establishing(t, b) = role {
                if t.positioned() {
                    *role = Role::Patrolling(t.clone(), b.clone());
                }
            }
        }
        let g = self.g.graph();
        let mut territory = region(g, &self.barriers(), robber);

        // Release paths that do not bound the territory.
        let mut released = 0;
        loop {
            let patrolling: Vec<usize> =
                (0..3).filter(|&i| matches!(self.roles[i], Role::Patrolling(..))).collect();
            let removable = patrolling.iter().copied().find(|&i| {
                let others: Vec<&Barrier> = patrolling
                    .iter()
                    .filter(|&&j| j != i)
                    .map(|&j| match &self.roles[j] {
                        Role::Patrolling(_, b) => b,
                        _ => unreachable!(),
                    })
                    .collect();
                !territory.is_empty() && region(g, &others, robber) == territory
            });
            match removable {
                Some(i) => {
                    self.roles[i] = Role::Idle;
                    released += 1;
                }
                None => break,
            }
        }

        // With three paths still needed, drop the one whose loss grows the
        // territory least.
        let mut forced = false;
        let patrolling: Vec<usize> = (0..3).filter(|&i| matches!(self.roles[i], Role::Patrolling(..))).collect();
        if patrolling.len() == 3 {
            forced = true;
            let drop = *patrolling
                .iter()
                .min_by_key(|&&i| {
                    let others: Vec<&Barrier> = patrolling
                        .iter()
                        .filter(|&&j| j != i)
                        .map(|&j| match &self.roles[j] {
                            Role::Patrolling(_, b) => b,
                            _ => unreachable!(),
                        })
                        .collect();
                    region(g, &others, robber).len()
                })
                .expect("three paths");
            self.roles[drop] = Role::Idle;
            territory = region(g, &self.barriers(), robber);
        }

        self.snapshots.push(TerritorySnapshot {
            round,
            territory: territory.len(),
            patrolled_paths: self.barriers().len(),
            released,
            forced_release: forced,
        });
        self.territory = Some(territory);
        self.plan_next();
    }

    fn plan_next(&mut self) {
        let Some(territory) = self.territory.clone() else { return };
        if territory.is_empty() {
            return;
        }
        let Some(slot) = (0..3).find(|&i| matches!(self.roles[i], Role::Idle)) else { return };
        let g = self.g.graph();
        let barriers = self.barriers();
        let mut in_h = vec![false; g.n()];
        for &v in &territory {
            in_h[v] = true;
        }
        let mut boundary: Vec<usize> = barriers
            .iter()
            .flat_map(|b| b.path.iter().copied())
            .filter(|&v| g.neighbors(v).iter().any(|&w| in_h[w] && !barriers.iter().any(|b| b.blocks_edge(v, w))))
            .collect();
        boundary.sort_unstable();
        boundary.dedup();
        if boundary.len() > MAX_ENDPOINTS {
            let step = boundary.len() as f64 / MAX_ENDPOINTS as f64;
            boundary = (0..MAX_ENDPOINTS).map(|i| boundary[(i as f64 * step) as usize]).collect();
        }
        if boundary.is_empty() {
            // The territory is a whole component: split it from scratch.
            boundary.push(territory[0]);
        }

        let mut best: Option<(bool, usize, Vec<usize>, Vec<u32>)> = None;
        for (ai, &a) in boundary.iter().enumerate() {
            let mut allowed = in_h.clone();
            allowed[a] = true;
            let da_full = restricted_bfs(g, &barriers, &allowed, a);
            // Candidate far ends: other boundary vertices and the deepest
            // territory vertex.
            let deepest = territory
                .iter()
                .copied()
                .filter(|&v| da_full[v] != UNREACHABLE)
                .max_by_key(|&v| (da_full[v], std::cmp::Reverse(v)));
            let mut ends: Vec<usize> = boundary[ai + 1..].to_vec();
            ends.extend(deepest);
            for b in ends {
                let mut allowed_ab = allowed.clone();
                allowed_ab[b] = true;
                let da = if in_h[b] { da_full.clone() } else { restricted_bfs(g, &barriers, &allowed_ab, a) };
                if da[b] == UNREACHABLE {
                    continue;
                }
                let path = path_from_dist(g, &barriers, &allowed_ab, &da, b);
                if !path.iter().any(|&v| in_h[v]) {
                    continue;
                }
                let (valid, largest) = self.evaluate(&barriers, &territory, &path);
                let better = match &best {
                    None => true,
                    Some((bv, bl, bp, _)) => (valid, std::cmp::Reverse(largest), std::cmp::Reverse(path.len()))
                        > (*bv, std::cmp::Reverse(*bl), std::cmp::Reverse(bp.len())),
                };
                if better {
                    best = Some((valid, largest, path, da));
                }
            }
        }
        let Some((_, _, path, ctrl)) = best else { return };
        let barrier = Barrier::new(self.g, path.clone());
        let ctl = PathController::with_control_distances(g, path, ctrl);
        self.roles[slot] = Role::Establishing(PatrolTriple::new(ctl), barrier);
    }

    /// Whether every part left by `path` is bounded by at most two paths,
    /// and the size of the largest part.
    fn evaluate(&self, barriers: &[&Barrier], territory: &[usize], path: &[usize]) -> (bool, usize) {
        let g = self.g.graph();
        let q = Barrier::new(self.g, path.to_vec());
        let mut all: Vec<&Barrier> = barriers.to_vec();
        all.push(&q);
        let mut seen = vec![false; g.n()];
        let mut valid = true;
        let mut largest = 0;
        for &v in territory {
            if seen[v] || q.on_path[v] {
                continue;
            }
            let part = region(g, &all, v);
            for &w in &part {
                seen[w] = true;
            }
            largest = largest.max(part.len());
            let needed = (0..all.len())
                .filter(|&i| {
                    let others: Vec<&Barrier> =
                        all.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, b)| *b).collect();
                    region(g, &others, v).len() > part.len()
                })
                .count();
            if needed > 2 {
                valid = false;
            }
        }
        (valid, largest)
    }
}

impl CopPolicy for NineCop<'_> {
    fn name(&self) -> String {
        "nine_cop".into()
    }

    fn cop_count(&self) -> usize {
        9
    }

    fn place(&mut self, _: &mut ChaCha8Rng) -> Result<Vec<usize>, PolicyError> {
        if self.g.n() == 0 {
            return Err(PolicyError::Other("empty graph".into()));
        }
        let path = self.first_path();
        let start = path[0];
        let barrier = Barrier::new(self.g, path.clone());
        self.roles = [
            Role::Establishing(PatrolTriple::new(PathController::new(self.g.graph(), path)), barrier),
            Role::Idle,
            Role::Idle,
        ];
        self.territory = None;
        self.snapshots.clear();
        Ok(vec![start; 9])
    }

    fn respond(&mut self, view: View<'_>, _: &mut ChaCha8Rng) -> Result<Vec<usize>, PolicyError> {
        let g = self.g.graph();
        let robber = view.robber;
        let mut next = view.cops.to_vec();
        let mut chase: Option<Vec<u32>> = None;
        for (t, role) in self.roles.iter_mut().enumerate() {
            let slots = 3 * t..3 * t + 3;
            let cur = [view.cops[3 * t], view.cops[3 * t + 1], view.cops[3 * t + 2]];
            match role {
                Role::Establishing(tr, _) | Role::Patrolling(tr, _) => {
                    next[slots].copy_from_slice(&tr.step(g, cur, robber));
                }
                Role::Idle => {
                    let d = chase.get_or_insert_with(|| g.bfs_distances(robber));
                    for (k, &c) in slots.zip(cur.iter()) {
                        next[k] = g
                            .neighbors(c)
                            .iter()
                            .copied()
                            .filter(|&w| d[w] != UNREACHABLE && d[w] < d[c])
                            .min()
                            .unwrap_or(c);
                    }
                }
            }
        }
        with_captures(g, view.cops, &mut next, robber);
        let newly = self.roles.iter().any(|r| matches!(r, Role::Establishing(t, _) if t.positioned()));
        if newly && !next.contains(&robber) {
            self.on_positioned(view.round, robber);
        }
        Ok(next)
    }
}
