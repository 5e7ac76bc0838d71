//! Robber move types and the coordinate-sum potential behind the two-cop
//! move budget.

use std::f64::consts::{FRAC_PI_6, PI, SQRT_2};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Point2, EPS};

const ANGLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveType {
    T1,
    T2,
    T3,
    T4,
}

/// Non-exclusive set of move types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct MoveTypes(u8);

impl MoveTypes {
    pub fn contains(self, t: MoveType) -> bool {
        self.0 & (1 << t as u8) != 0
    }

    fn insert(&mut self, t: MoveType) {
        self.0 |= 1 << t as u8;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn only(self, t: MoveType) -> bool {
        self.0 == 1 << t as u8
    }

    pub fn iter(self) -> impl Iterator<Item = MoveType> {
        [MoveType::T1, MoveType::T2, MoveType::T3, MoveType::T4].into_iter().filter(move |&t| self.contains(t))
    }

    pub fn from_types(types: &[MoveType]) -> Self {
        let mut s = MoveTypes::default();
        for &t in types {
            s.insert(t);
        }
        s
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("displacement {d} exceeds the radius {r}")]
pub struct MoveTooLong {
    pub d: f64,
    pub r: f64,
}

/// Angle in `[−π/6, 11π/6)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let lo = -FRAC_PI_6;
    lo + (theta - lo).rem_euclid(2.0 * PI)
}

fn in_sector(theta: f64, lo: f64, hi: f64) -> bool {
    // Sectors are closed; test both the angle and its 2π shift.
    [theta, theta - 2.0 * PI, theta + 2.0 * PI]
        .iter()
        .any(|&t| t >= lo - ANGLE_TOL && t <= hi + ANGLE_TOL)
}

/// Types of a displacement `(d, θ)` with `0 ≤ d ≤ r`.
pub fn classify_move(d: f64, theta: f64, r: f64) -> Result<MoveTypes, MoveTooLong> {
    if d > r + EPS || d < 0.0 || !d.is_finite() {
        return Err(MoveTooLong { d, r });
    }
    let mut out = MoveTypes::default();
    if d <= r / 2.0 {
        out.insert(MoveType::T1);
        return Ok(out);
    }
    let theta = normalize_angle(theta);
    if in_sector(theta, 7.0 * FRAC_PI_6, 11.0 * FRAC_PI_6) {
        out.insert(MoveType::T2);
    }
    if in_sector(theta, 4.0 * FRAC_PI_6, 8.0 * FRAC_PI_6) {
        out.insert(MoveType::T3);
    }
    if in_sector(theta, -FRAC_PI_6, 4.0 * FRAC_PI_6) {
        out.insert(MoveType::T4);
    }
    Ok(out)
}

pub fn classify_displacement(from: Point2, to: Point2, r: f64) -> Result<MoveTypes, MoveTooLong> {
    let j = to - from;
    classify_move(j.norm(), j.y.atan2(j.x), r)
}

/// Minimum coordinate-sum gain of a move that is only T4.
pub fn t4_min_gain(r: f64) -> f64 {
    (3f64.sqrt() - 1.0) / 4.0 * r
}

/// Largest possible coordinate-sum loss of any move.
pub fn max_loss(r: f64) -> f64 {
    r * SQRT_2
}

/// `972 (√3 − 1)/4 − 28√2`: the coordinate sum forced after the move budget.
pub fn budget_margin() -> f64 {
    972.0 * (3f64.sqrt() - 1.0) / 4.0 - 28.0 * SQRT_2
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditedMove {
    pub types: MoveTypes,
    pub delta_sum: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PotentialReport {
    pub moves: Vec<AuditedMove>,
    pub t1_or_t2: usize,
    pub t1_or_t3: usize,
    pub pure_t4: usize,
    /// Pure-T4 moves gaining less than `((√3 − 1)/4) r`.
    pub t4_gain_failures: usize,
    /// Moves losing more than `r√2`.
    pub loss_failures: usize,
    pub budget_margin: f64,
    pub ok: bool,
}

/// Audits a robber trajectory (consecutive positions) move by move.
pub fn potential_audit(positions: &[Point2], r: f64) -> Result<PotentialReport, MoveTooLong> {
    let mut moves = Vec::with_capacity(positions.len().saturating_sub(1));
    let (mut t12, mut t13, mut t4, mut gain_fail, mut loss_fail) = (0, 0, 0, 0, 0);
    for w in positions.windows(2) {
        let types = classify_displacement(w[0], w[1], r)?;
        let delta = (w[1].x + w[1].y) - (w[0].x + w[0].y);
        if types.contains(MoveType::T1) || types.contains(MoveType::T2) {
            t12 += 1;
        }
        if types.contains(MoveType::T1) || types.contains(MoveType::T3) {
            t13 += 1;
        }
        if types.only(MoveType::T4) {
            t4 += 1;
            if delta < t4_min_gain(r) - 1e-12 {
                gain_fail += 1;
            }
        }
        if -delta > max_loss(r) + 1e-12 {
            loss_fail += 1;
        }
        moves.push(AuditedMove { types, delta_sum: delta });
    }
    let margin = budget_margin();
    Ok(PotentialReport {
        moves,
        t1_or_t2: t12,
        t1_or_t3: t13,
        pure_t4: t4,
        t4_gain_failures: gain_fail,
        loss_failures: loss_fail,
        budget_margin: margin,
        ok: gain_fail == 0 && loss_fail == 0 && margin > 2.0,
    })
}
