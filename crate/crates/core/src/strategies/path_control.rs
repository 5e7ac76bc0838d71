//! One cop guarding a shortest path `v_0 … v_s`.
//!
//! The cop's target is the shadow `v_j` with `j = min(d(v_0, R), s)`. Every
//! path vertex `v_i` satisfies `d(R, v_i) ≥ |j − i| = d(v_j, v_i)`, so a
//! cop sitting on the shadow reaches any path vertex no later than the
//! robber.

use rand_chacha::ChaCha8Rng;

use super::engine::{CopPolicy, PolicyError, View};
use crate::geograph::{Graph, UNREACHABLE};

#[derive(Debug, Clone)]
pub struct PathController {
    path: Vec<usize>,
    // Index on the path, or usize::MAX.
    index_of: Vec<usize>,
    // Distances from v_0 in the graph the robber moves in.
    ctrl_dist: Vec<u32>,
    // Distances to the nearest path vertex in the full graph.
    walk_dist: Vec<u32>,
}

impl PathController {
    /// Controller for a shortest path of `g`, shadows measured in `g`.
    pub fn new(g: &Graph, path: Vec<usize>) -> Self {
        let ctrl = g.bfs_distances(path[0]);
        Self::with_control_distances(g, path, ctrl)
    }

    /// Shadows measured by `ctrl_dist` (distances from `path[0]` in the
    /// robber's graph, where the path must be a shortest path).
    pub fn with_control_distances(g: &Graph, path: Vec<usize>, ctrl_dist: Vec<u32>) -> Self {
        assert!(!path.is_empty(), "path must be nonempty");
        let mut index_of = vec![usize::MAX; g.n()];
        for (i, &v) in path.iter().enumerate() {
            index_of[v] = i;
        }
        let walk_dist = g.multi_source_bfs(path.iter().copied());
        Self { path, index_of, ctrl_dist, walk_dist }
    }

    pub fn path(&self) -> &[usize] {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.path.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.path.len() == 1
    }

    pub fn index_of(&self, v: usize) -> Option<usize> {
        let i = self.index_of[v];
        (i != usize::MAX).then_some(i)
    }

    pub fn vertex(&self, i: usize) -> usize {
        self.path[i]
    }

    /// Path index of the robber's shadow.
    pub fn shadow(&self, robber: usize) -> usize {
        let d = self.ctrl_dist[robber];
        if d == UNREACHABLE {
            self.len()
        } else {
            (d as usize).min(self.len())
        }
    }

    pub fn controls(&self, cop: usize, robber: usize) -> bool {
        cop == self.path[self.shadow(robber)]
    }

    /// Next cop vertex: walk to the path, then along it towards the shadow.
    pub fn next(&self, g: &Graph, cop: usize, robber: usize) -> usize {
        match self.index_of(cop) {
            Some(i) => {
                let j = self.shadow(robber);
                let k = if i.abs_diff(j) <= 1 {
                    j
                } else if j > i {
                    i + 1
                } else {
                    i - 1
                };
                self.path[k]
            }
            None => {
                let d = self.walk_dist[cop];
                if d == UNREACHABLE {
                    return cop;
                }
                g.neighbors(cop)
                    .iter()
                    .copied()
                    .find(|&w| self.walk_dist[w] != UNREACHABLE && self.walk_dist[w] + 1 == d)
                    .expect("BFS predecessor towards the path")
            }
        }
    }
}

/// Capture move if the robber is within reach of `cop`.
pub(crate) fn capture_step(g: &Graph, cop: usize, robber: usize) -> Option<usize> {
    g.is_adjacent_or_equal(cop, robber).then_some(robber)
}

/// Single cop controlling one path.
pub struct PathControlCop<'a> {
    g: &'a Graph,
    ctl: PathController,
    start: usize,
    controlled_round: Option<usize>,
}

impl<'a> PathControlCop<'a> {
    pub fn new(g: &'a Graph, path: Vec<usize>, start: usize) -> Self {
        Self { g, ctl: PathController::new(g, path), start, controlled_round: None }
    }

    /// First round after whose cop move the cop sat on the robber's shadow.
    pub fn controlled_round(&self) -> Option<usize> {
        self.controlled_round
    }

    pub fn controller(&self) -> &PathController {
        &self.ctl
    }
}

impl CopPolicy for PathControlCop<'_> {
    fn name(&self) -> String {
        "path_control".into()
    }

    fn cop_count(&self) -> usize {
        1
    }

    fn place(&mut self, _: &mut ChaCha8Rng) -> Result<Vec<usize>, PolicyError> {
        Ok(vec![self.start])
    }

    fn respond(&mut self, view: View<'_>, _: &mut ChaCha8Rng) -> Result<Vec<usize>, PolicyError> {
        let cop = view.cops[0];
        let next = capture_step(self.g, cop, view.robber).unwrap_or_else(|| self.ctl.next(self.g, cop, view.robber));
        if self.controlled_round.is_none() && self.ctl.controls(next, view.robber) {
            self.controlled_round = Some(view.round);
        }
        Ok(vec![next])
    }
}
