//! Three cops `(C−, C, C+)` patrolling a shortest path of a geometric graph.
//!
//! Phase one: the three move as one until `C` controls the path. Phase two:
//! the flankers peel off to `v_{i−1}` and `v_{i+1}` while `C` keeps control.
//! Once positioned, a robber whose move segment crosses a path edge lands
//! next to a cop.

use rand_chacha::ChaCha8Rng;

use super::engine::{CopPolicy, Phase, PolicyError, Trace, View};
use super::path_control::{capture_step, PathController};
use crate::geograph::Graph;
use crate::geometry::{segments_intersect, Point2, Segment};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flank {
    WithC,
    Apart,
}

/// Cop slots are ordered `[C−, C, C+]`.
#[derive(Debug, Clone)]
pub struct PatrolTriple {
    ctl: PathController,
    minus: Flank,
    plus: Flank,
    phase_two: bool,
}

impl PatrolTriple {
    pub fn new(ctl: PathController) -> Self {
        Self { ctl, minus: Flank::WithC, plus: Flank::WithC, phase_two: false }
    }

    pub fn controller(&self) -> &PathController {
        &self.ctl
    }

    pub fn path(&self) -> &[usize] {
        self.ctl.path()
    }

    pub fn positioned(&self) -> bool {
        self.phase_two && self.minus == Flank::Apart && self.plus == Flank::Apart
    }

    /// Next positions, ignoring captures.
    pub fn step(&mut self, g: &Graph, cops: [usize; 3], robber: usize) -> [usize; 3] {
        let [cm, c, cp] = cops;
        // Flankers only matter in phase one; afterwards they sit on the path
        // next to C and are recomputed from C's index.
        let c_next = self.ctl.next(g, c, robber);
        if !self.phase_two {
            let toward = |f: usize| -> usize {
                if f == c || g.is_adjacent_or_equal(f, c_next) {
                    c_next
                } else {
                    g.shortest_path(f, c_next).map_or(f, |p| p[1])
                }
            };
            let out = [toward(cm), c_next, toward(cp)];
            if out[0] == c_next && out[2] == c_next && self.ctl.controls(c_next, robber) {
                self.phase_two = true;
            }
            return out;
        }

        let s = self.ctl.len();
        let i = self.ctl.index_of(c).expect("controller on its path in phase two");
        let j = self.ctl.index_of(c_next).expect("controller stays on its path");
        let plus = match self.plus {
            Flank::Apart => (j + 1).min(s),
            Flank::WithC if j == i => {
                self.plus = Flank::Apart;
                (i + 1).min(s)
            }
            Flank::WithC if j + 1 == i => {
                self.plus = Flank::Apart;
                i
            }
            Flank::WithC => j,
        };
        let minus = match self.minus {
            Flank::Apart => j.saturating_sub(1),
            Flank::WithC if j == i => {
                self.minus = Flank::Apart;
                i.saturating_sub(1)
            }
            Flank::WithC if j == i + 1 => {
                self.minus = Flank::Apart;
                i
            }
            Flank::WithC => j,
        };
        [self.ctl.vertex(minus), c_next, self.ctl.vertex(plus)]
    }
}

/// Applies captures: any cop within reach of the robber takes him.
pub(crate) fn with_captures(g: &Graph, current: &[usize], planned: &mut [usize], robber: usize) {
    if let Some(i) = current.iter().position(|&c| capture_step(g, c, robber).is_some()) {
        planned[i] = robber;
    }
}

pub struct PatrolCops<'a> {
    g: &'a Graph,
    triple: PatrolTriple,
    start: usize,
    positioned_round: Option<usize>,
}

impl<'a> PatrolCops<'a> {
    /// Patrol of `path`; the three cops start together on `start`.
    pub fn new(g: &'a Graph, path: Vec<usize>, start: usize) -> Self {
        Self { g, triple: PatrolTriple::new(PathController::new(g, path)), start, positioned_round: None }
    }

    /// Round after whose cop move the triple was first positioned.
    pub fn positioned_round(&self) -> Option<usize> {
        self.positioned_round
    }

    pub fn path(&self) -> &[usize] {
        self.triple.path()
    }
}

impl CopPolicy for PatrolCops<'_> {
    fn name(&self) -> String {
        "patrol".into()
    }

    fn cop_count(&self) -> usize {
        3
    }

    fn place(&mut self, _: &mut ChaCha8Rng) -> Result<Vec<usize>, PolicyError> {
        Ok(vec![self.start; 3])
    }

    fn respond(&mut self, view: View<'_>, _: &mut ChaCha8Rng) -> Result<Vec<usize>, PolicyError> {
        let cops = [view.cops[0], view.cops[1], view.cops[2]];
        let mut next = self.triple.step(self.g, cops, view.robber).to_vec();
        with_captures(self.g, view.cops, &mut next, view.robber);
        if self.positioned_round.is_none() && self.triple.positioned() {
            self.positioned_round = Some(view.round);
        }
        Ok(next)
    }
}

/// Whether the closed segment `from → to` meets a closed edge segment of
/// the path.
pub fn crosses_path(points: &[Point2], path: &[usize], from: usize, to: usize) -> bool {
    let mv = Segment::new(points[from], points[to]);
    path.windows(2).any(|e| segments_intersect(&mv, &Segment::new(points[e[0]], points[e[1]])))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CrossingStats {
    /// Robber moves made while the triple was positioned.
    pub rounds: usize,
    pub crossings: usize,
    /// Crossings not followed by capture on the next cop move.
    pub violations: usize,
}

/// Scans a patrol trace for crossings after `positioned_round`.
pub fn audit_crossings(points: &[Point2], path: &[usize], trace: &Trace, positioned_round: usize) -> CrossingStats {
    let mut stats = CrossingStats::default();
    let e = &trace.entries;
    for i in 1..e.len() {
        if e[i].phase != Phase::RobberMove || e[i].round <= positioned_round {
            continue;
        }
        stats.rounds += 1;
        let (from, to) = (e[i - 1].robber.expect("placed"), e[i].robber.expect("placed"));
        if !crosses_path(points, path, from, to) {
            continue;
        }
        stats.crossings += 1;
        let caught_now = e[i].cops.contains(&to);
        let caught_next = e.get(i + 1).is_some_and(|n| n.phase == Phase::CopMove && n.cops.contains(&to));
        if !caught_now && !caught_next {
            stats.violations += 1;
        }
    }
    stats
}
