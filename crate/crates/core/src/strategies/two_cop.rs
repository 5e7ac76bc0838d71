//! Two independent cops for dense geometric graphs.
//!
//! Cop 1 works in the plane as given: it walks right to the vertical line
//! `L1` through the robber (S1), climbs along `L1` towards `P1`, the point
//! `r/3` below the robber (S2), then shadows `P1` (S3). Cop 2 runs the same
//! program in transposed coordinates, so its line is horizontal and it
//! approaches from the left.
//!
//! Each step the cop picks a target point `y` and moves to the vertex within
//! `r` of itself that is nearest to `y`, provided it lies within `s` of `y`.

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::engine::{CopPolicy, PolicyError, View};
use super::moves::{classify_displacement, MoveType};
use crate::geograph::GeometricGraph;
use crate::geometry::{clamp_to_square, Point2, EPS};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrategyConstants {
    /// Target slack: the chosen vertex must lie within `s` of the target.
    pub s: f64,
    /// Allowed drift from the line in S2, in units of `r`.
    pub eps7: f64,
    /// Allowed height above the axis at the end of S1, in units of `r`.
    pub eps9: f64,
    /// Upper bound on `s / r²` for the full guarantee.
    pub eps10: f64,
    /// Distance of `P1` below the robber.
    pub p_offset: f64,
    /// Move budget is `horizon_factor / r`.
    pub horizon_factor: f64,
}

impl StrategyConstants {
    /// Constants for which the capture guarantee is proved; `s` is set just
    /// under `r² · 10⁻¹⁰`.
    pub fn faithful(r: f64) -> Self {
        Self { s: 0.99 * r * r * 1e-10, eps7: 1e-7, eps9: 1e-9, eps10: 1e-10, p_offset: r / 3.0, horizon_factor: 1000.0 }
    }

    /// Same structure with a caller-chosen `s`, for desk-scale densities.
    pub fn relaxed(r: f64, s: f64) -> Self {
        Self { s, ..Self::faithful(r) }
    }

    pub fn validate(&self, r: f64) -> Result<(), String> {
        if !(self.s > 0.0) {
            return Err(format!("s must be positive, got {}", self.s));
        }
        if !(self.eps7 > 0.0 && self.eps9 > 0.0 && self.eps10 > 0.0) {
            return Err("eps7, eps9 and eps10 must be positive".into());
        }
        if !(self.p_offset > 0.0 && self.p_offset <= r / 2.0) {
            return Err(format!("p_offset must lie in (0, r/2], got {}", self.p_offset));
        }
        Ok(())
    }

    /// Whether `s < eps10 · r²`, the regime of the capture guarantee.
    pub fn is_faithful(&self, r: f64) -> bool {
        self.s < self.eps10 * r * r
    }

    pub fn horizon(&self, r: f64) -> usize {
        (self.horizon_factor / r).ceil() as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stage {
    S1,
    S2,
    S3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Response {
    Capture,
    Approach,
    ReachP,
    T1,
    T2,
    Mirror,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageEvent {
    pub round: usize,
    pub cop: usize,
    pub from: Stage,
    pub to: Stage,
    /// Height above the cop's axis when leaving S1, in units of `r`.
    pub height: f64,
}

#[derive(Debug, Clone)]
struct AxisCop {
    transpose: bool,
    stage: Stage,
}

impl AxisCop {
    fn frame(&self, p: Point2) -> Point2 {
        if self.transpose {
            p.transposed()
        } else {
            p
        }
    }

    fn p1(&self, robber: Point2, k: &StrategyConstants) -> Point2 {
        Point2::new(robber.x, (robber.y - k.p_offset).max(0.0))
    }

    /// Point of `B(c, r)` closest to the vertical line through `x`.
    fn toward_line(c: Point2, x: f64, r: f64) -> (Point2, bool) {
        let dx = x - c.x;
        if dx.abs() <= r {
            (Point2::new(x, c.y), true)
        } else {
            (Point2::new(c.x + r * dx.signum(), c.y), false)
        }
    }

    /// Step along the line through `x` towards height `goal`, moving at most
    /// `v` vertically; falls back to [`Self::toward_line`] when out of reach.
    fn climb(c: Point2, x: f64, goal: f64, v: f64, r: f64) -> Point2 {
        let dx = x - c.x;
        if dx.abs() > r {
            return Self::toward_line(c, x, r).0;
        }
        let vmax = (r * r - dx * dx).max(0.0).sqrt();
        let v = v.min(vmax);
        Point2::new(x, c.y + (goal - c.y).clamp(-v, v))
    }

    /// Target in this cop's frame; all inputs already in the frame.
    fn target(
        &mut self,
        c: Point2,
        prev: Point2,
        robber: Point2,
        r: f64,
        k: &StrategyConstants,
    ) -> (Point2, Response, Option<Stage>) {
        let jump = robber - prev;
        let mirror = clamp_to_square(c + jump);
        match self.stage {
            Stage::S1 => {
                let (y, on_line) = Self::toward_line(c, robber.x, r);
                let y = clamp_to_square(y);
                (y, Response::Approach, on_line.then_some(Stage::S2))
            }
            Stage::S2 => {
                if prev.y < k.p_offset {
                    return (mirror, Response::Mirror, Some(Stage::S3));
                }
                let p1 = self.p1(robber, k);
                if p1.dist(c) <= r {
                    return (p1, Response::ReachP, Some(Stage::S3));
                }
                let types = classify_displacement(prev, robber, r).unwrap_or_default();
                if types.contains(MoveType::T1) {
                    let d = jump.norm();
                    let cos = if d > 0.0 { (jump.x / d).abs() } else { 1.0 };
                    let v = r * (1.0 - 0.5 * cos - k.eps7);
                    (clamp_to_square(Self::climb(c, robber.x, p1.y, v, r)), Response::T1, None)
                } else if types.contains(MoveType::T2) {
                    (clamp_to_square(Self::climb(c, robber.x, p1.y, r, r)), Response::T2, None)
                } else {
                    (mirror, Response::Mirror, None)
                }
            }
            Stage::S3 => (mirror, Response::Mirror, None),
        }
    }
}

pub struct TwoCop<'a> {
    g: &'a GeometricGraph,
    k: StrategyConstants,
    cops: [AxisCop; 2],
    history: Vec<StageEvent>,
    responses: Vec<(usize, usize, Response)>,
}

impl<'a> TwoCop<'a> {
    pub fn new(g: &'a GeometricGraph, k: StrategyConstants) -> Self {
        Self {
            g,
            k,
            cops: [AxisCop { transpose: false, stage: Stage::S1 }, AxisCop { transpose: true, stage: Stage::S1 }],
            history: Vec::new(),
            responses: Vec::new(),
        }
    }

    pub fn constants(&self) -> &StrategyConstants {
        &self.k
    }

    pub fn stages(&self) -> [Stage; 2] {
        [self.cops[0].stage, self.cops[1].stage]
    }

    pub fn history(&self) -> &[StageEvent] {
        &self.history
    }

    /// `(round, cop, response)` for every cop move.
    pub fn responses(&self) -> &[(usize, usize, Response)] {
        &self.responses
    }

    /// Vertex of `N̄(c)` nearest to `y` among those within `s` of `y`.
    fn snap(&self, cop: usize, c: usize, y: Point2) -> Result<usize, PolicyError> {
        let pts = self.g.points();
        let lim = self.k.s + EPS;
        std::iter::once(c)
            .chain(self.g.neighbors(c).iter().copied())
            .map(|v| (pts[v].dist(y), v))
            .filter(|&(d, _)| d <= lim)
            .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
            .map(|(_, v)| v)
            .ok_or(PolicyError::DaggerViolation { cop, target: y })
    }
}

impl CopPolicy for TwoCop<'_> {
    fn name(&self) -> String {
        "two_cop".into()
    }

    fn cop_count(&self) -> usize {
        2
    }

    fn place(&mut self, _: &mut ChaCha8Rng) -> Result<Vec<usize>, PolicyError> {
        let origin = Point2::new(0.0, 0.0);
        let v = self
            .g
            .nearest_vertex(origin)
            .filter(|&v| self.g.point(v).dist(origin) <= self.k.s + EPS)
            .ok_or(PolicyError::DaggerViolation { cop: 0, target: origin })?;
        for c in &mut self.cops {
            c.stage = Stage::S1;
        }
        self.history.clear();
        self.responses.clear();
        Ok(vec![v, v])
    }

    fn respond(&mut self, view: View<'_>, _: &mut ChaCha8Rng) -> Result<Vec<usize>, PolicyError> {
        let r = self.g.radius;
        let robber = self.g.point(view.robber);
        let prev = self.g.point(view.prev_robber.unwrap_or(view.robber));
        let mut next = Vec::with_capacity(2);
        for i in 0..2 {
            let cv = view.cops[i];
            if self.g.is_adjacent_or_equal(cv, view.robber) {
                next.push(view.robber);
                self.responses.push((view.round, i, Response::Capture));
                continue;
            }
            let cop = &mut self.cops[i];
            let c = cop.frame(self.g.point(cv));
            let (y, resp, to) = cop.target(c, cop.frame(prev), cop.frame(robber), r, &self.k);
            let y = cop.frame(y);
            if let Some(to) = to {
                let from = cop.stage;
                cop.stage = to;
                self.history.push(StageEvent { round: view.round, cop: i, from, to, height: c.y / r });
            }
            self.responses.push((view.round, i, resp));
            next.push(self.snap(i, cv, y)?);
        }
        Ok(next)
    }
}
