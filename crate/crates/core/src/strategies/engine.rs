//! Round structure: cops place, the robber places, then every round is a
//! robber move followed by a cop move. A capture happens as soon as the
//! robber shares a vertex with a cop.

use std::io::{BufRead, Write};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geograph::Graph;
use crate::geometry::Point2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolicyError {
    #[error("cop {cop}: no vertex within r of the cop and within s of target {target}")]
    DaggerViolation { cop: usize, target: Point2 },
    #[error("{0}")]
    Other(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GameError {
    #[error("round {round}: illegal move by {policy}: {detail}")]
    IllegalMove { policy: String, round: usize, detail: String },
    #[error("round {round}: {policy} failed: {source}")]
    Policy { policy: String, round: usize, source: PolicyError },
    #[error("max_rounds must be at least 1")]
    NoRounds,
}

/// What a cop policy sees when asked to move.
#[derive(Debug, Clone, Copy)]
pub struct View<'a> {
    pub round: usize,
    pub robber: usize,
    /// Robber vertex before his last move; `None` right after placement.
    pub prev_robber: Option<usize>,
    pub cops: &'a [usize],
}

pub trait CopPolicy {
    fn name(&self) -> String;
    fn cop_count(&self) -> usize;
    fn place(&mut self, rng: &mut ChaCha8Rng) -> Result<Vec<usize>, PolicyError>;
    fn respond(&mut self, view: View<'_>, rng: &mut ChaCha8Rng) -> Result<Vec<usize>, PolicyError>;
}

pub trait RobberPolicy {
    fn name(&self) -> String;
    fn place(&mut self, cops: &[usize], rng: &mut ChaCha8Rng) -> Result<usize, PolicyError>;
    fn step(&mut self, robber: usize, cops: &[usize], rng: &mut ChaCha8Rng) -> Result<usize, PolicyError>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    CopPlacement,
    RobberPlacement,
    RobberMove,
    CopMove,
}

/// Positions after one half-move.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub round: usize,
    pub phase: Phase,
    pub robber: Option<usize>,
    pub cops: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "result")]
pub enum Outcome {
    Captured { round: usize },
    Survived { rounds: usize },
}

impl Outcome {
    pub fn captured(&self) -> bool {
        matches!(self, Outcome::Captured { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    pub cop_policy: String,
    pub robber_policy: String,
    pub seed: u64,
    pub max_rounds: usize,
    pub entries: Vec<TraceEntry>,
    pub outcome: Outcome,
    /// Producing run configuration, echoed into the header line.
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub config: serde_json::Value,
}

impl Trace {
    /// Robber vertex after each of his half-moves (placement first).
    pub fn robber_path(&self) -> Vec<usize> {
        self.entries
            .iter()
            .filter(|e| matches!(e.phase, Phase::RobberPlacement | Phase::RobberMove))
            .filter_map(|e| e.robber)
            .collect()
    }

    pub fn write_jsonl(&self, mut w: impl Write) -> std::io::Result<()> {
        let header = TraceLine::Header {
            format_version: crate::geograph::io::FORMAT_VERSION,
            cop_policy: self.cop_policy.clone(),
            robber_policy: self.robber_policy.clone(),
            seed: self.seed,
            max_rounds: self.max_rounds,
            config: self.config.clone(),
        };
        writeln!(w, "{}", serde_json::to_string(&header)?)?;
        for e in &self.entries {
            writeln!(w, "{}", serde_json::to_string(&TraceLine::Step(e.clone()))?)?;
        }
        writeln!(w, "{}", serde_json::to_string(&TraceLine::Outcome(self.outcome))?)?;
        Ok(())
    }

    pub fn read_jsonl(r: impl BufRead) -> Result<Trace, TraceError> {
        let mut header = None;
        let mut entries = Vec::new();
        let mut outcome = None;
        for (i, line) in r.lines().enumerate() {
            let line = line.map_err(|e| TraceError::Format(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let parsed: TraceLine = serde_json::from_str(&line)
                .map_err(|e| TraceError::Format(format!("line {}: {e}", i + 1)))?;
            match parsed {
                TraceLine::Header { format_version, cop_policy, robber_policy, seed, max_rounds, config } => {
                    if format_version != crate::geograph::io::FORMAT_VERSION {
                        return Err(TraceError::Format(format!("format_version {format_version}")));
                    }
                    header = Some((cop_policy, robber_policy, seed, max_rounds, config));
                }
                TraceLine::Step(e) => entries.push(e),
                TraceLine::Outcome(o) => outcome = Some(o),
            }
        }
        let (cop_policy, robber_policy, seed, max_rounds, config) =
            header.ok_or_else(|| TraceError::Format("missing header".into()))?;
        let outcome = outcome.ok_or_else(|| TraceError::Format("missing outcome".into()))?;
        Ok(Trace { cop_policy, robber_policy, seed, max_rounds, entries, outcome, config })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum TraceLine {
    Header {
        format_version: u32,
        cop_policy: String,
        robber_policy: String,
        seed: u64,
        max_rounds: usize,
        #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
        config: serde_json::Value,
    },
    Step(TraceEntry),
    Outcome(Outcome),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TraceError {
    #[error("malformed trace: {0}")]
    Format(String),
    #[error("entry {index}: {detail}")]
    Invalid { index: usize, detail: String },
}

fn legal_step(g: &Graph, from: usize, to: usize) -> bool {
    to < g.n() && g.is_adjacent_or_equal(from, to)
}

/// Plays one game. Every half-move is checked for legality.
pub fn run_game(
    g: &Graph,
    cop: &mut dyn CopPolicy,
    robber: &mut dyn RobberPolicy,
    max_rounds: usize,
    seed: u64,
) -> Result<Trace, GameError> {
    if max_rounds == 0 {
        return Err(GameError::NoRounds);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (cop_name, robber_name) = (cop.name(), robber.name());
    let illegal = |policy: &str, round, detail: String| GameError::IllegalMove {
        policy: policy.to_string(),
        round,
        detail,
    };
    let failed = |policy: &str, round, source| GameError::Policy { policy: policy.to_string(), round, source };

    let mut entries = Vec::new();
    let mut cops = cop.place(&mut rng).map_err(|e| failed(&cop_name, 0, e))?;
    if cops.len() != cop.cop_count() || cops.iter().any(|&c| c >= g.n()) {
        return Err(illegal(&cop_name, 0, format!("bad placement {cops:?}")));
    }
    entries.push(TraceEntry { round: 0, phase: Phase::CopPlacement, robber: None, cops: cops.clone() });

    let mut r = robber.place(&cops, &mut rng).map_err(|e| failed(&robber_name, 1, e))?;
    if r >= g.n() {
        return Err(illegal(&robber_name, 1, format!("placement on vertex {r}")));
    }
    entries.push(TraceEntry { round: 1, phase: Phase::RobberPlacement, robber: Some(r), cops: cops.clone() });

    let finish = |entries, outcome| Trace {
        cop_policy: cop_name.clone(),
        robber_policy: robber_name.clone(),
        seed,
        max_rounds,
        entries,
        outcome,
        config: serde_json::Value::Null,
    };
    if cops.contains(&r) {
        return Ok(finish(entries, Outcome::Captured { round: 1 }));
    }

    let mut prev = None;
    let mut round = 1;
    loop {
        let view = View { round, robber: r, prev_robber: prev, cops: &cops };
        let next = cop.respond(view, &mut rng).map_err(|e| failed(&cop_name, round, e))?;
        if next.len() != cops.len() {
            return Err(illegal(&cop_name, round, format!("{} positions for {} cops", next.len(), cops.len())));
        }
        if let Some(i) = (0..cops.len()).find(|&i| !legal_step(g, cops[i], next[i])) {
            return Err(illegal(&cop_name, round, format!("cop {i} from {} to {}", cops[i], next[i])));
        }
        cops = next;
        entries.push(TraceEntry { round, phase: Phase::CopMove, robber: Some(r), cops: cops.clone() });
        if cops.contains(&r) {
            return Ok(finish(entries, Outcome::Captured { round }));
        }

        round += 1;
        if round > max_rounds {
            return Ok(finish(entries, Outcome::Survived { rounds: max_rounds }));
        }
        let nr = robber.step(r, &cops, &mut rng).map_err(|e| failed(&robber_name, round, e))?;
        if !legal_step(g, r, nr) {
            return Err(illegal(&robber_name, round, format!("robber from {r} to {nr}")));
        }
        prev = Some(r);
        r = nr;
        entries.push(TraceEntry { round, phase: Phase::RobberMove, robber: Some(r), cops: cops.clone() });
        if cops.contains(&r) {
            return Ok(finish(entries, Outcome::Captured { round }));
        }
    }
}

/// Re-checks phase order, move legality and the recorded outcome.
pub fn verify_trace(g: &Graph, trace: &Trace) -> Result<(), TraceError> {
    let bad = |index, detail: &str| Err(TraceError::Invalid { index, detail: detail.to_string() });
    let e = &trace.entries;
    if e.len() < 2 || e[0].phase != Phase::CopPlacement || e[1].phase != Phase::RobberPlacement {
        return bad(0, "trace must start with both placements");
    }
    let k = e[0].cops.len();
    for (i, entry) in e.iter().enumerate() {
        if entry.cops.len() != k || entry.cops.iter().any(|&c| c >= g.n()) {
            return bad(i, "cop positions invalid");
        }
        if entry.robber.is_some_and(|r| r >= g.n()) {
            return bad(i, "robber position invalid");
        }
    }
    if e[0].robber.is_some() || e[1].cops != e[0].cops || e[0].round != 0 || e[1].round != 1 {
        return bad(1, "inconsistent placements");
    }
    let mut captured_at = None;
    for i in 1..e.len() {
        let (prev, cur) = (&e[i - 1], &e[i]);
        let robber = cur.robber.expect("robber placed");
        if captured_at.is_some() {
            return bad(i, "moves after capture");
        }
        if i >= 2 {
            let expected = match prev.phase {
                Phase::RobberPlacement | Phase::RobberMove => (Phase::CopMove, prev.round),
                Phase::CopMove => (Phase::RobberMove, prev.round + 1),
                Phase::CopPlacement => unreachable!(),
            };
            if (cur.phase, cur.round) != expected {
                return bad(i, "phase order broken");
            }
            let prev_robber = prev.robber.expect("robber placed");
            match cur.phase {
                Phase::CopMove => {
                    if robber != prev_robber {
                        return bad(i, "robber moved during cop move");
                    }
                    if (0..k).any(|c| !g.is_adjacent_or_equal(prev.cops[c], cur.cops[c])) {
                        return bad(i, "illegal cop move");
                    }
                }
                Phase::RobberMove => {
                    if cur.cops != prev.cops {
                        return bad(i, "cops moved during robber move");
                    }
                    if !g.is_adjacent_or_equal(prev_robber, robber) {
                        return bad(i, "illegal robber move");
                    }
                }
                _ => return bad(i, "placement after start"),
            }
        }
        if cur.cops.contains(&robber) {
            captured_at = Some(cur.round);
        }
    }
    let last_round = e.last().map_or(0, |x| x.round);
    match (trace.outcome, captured_at) {
        (Outcome::Captured { round }, Some(c)) if round == c => Ok(()),
        (Outcome::Survived { rounds }, None) if rounds == trace.max_rounds && last_round == rounds => Ok(()),
        _ => bad(e.len() - 1, "outcome disagrees with positions"),
    }
}
