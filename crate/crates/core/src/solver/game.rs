//! Exact k-cop solver by retrograde analysis.
//!
//! A state is `(robber, cop multiset, mover)`. Capture states (robber on a
//! cop's vertex) have remoteness 0; labels then spread backwards in BFS
//! order, so each label is the optimal number of half-moves to capture.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geograph::Graph;

pub const DEFAULT_STATE_BUDGET: u64 = 200_000_000;

/// Remoteness value for states the robber wins.
pub const ROBBER_WIN: u32 = u32::MAX;

// Unlabeled robber-to-move states keep their open-successor count in the
// remoteness slot, tagged with the high bit.
const PENDING: u32 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("state space of {states} states exceeds the budget of {budget}")]
    BudgetExceeded { states: u64, budget: u64 },
    #[error("need at least one cop and one vertex (k = {k}, n = {n})")]
    Trivial { k: usize, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mover {
    Robber,
    Cops,
}

/// Game position between moves; cops kept as a sorted multiset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GameState {
    pub robber: usize,
    pub cops: Vec<usize>,
    pub mover: Mover,
}

impl GameState {
    pub fn new(robber: usize, mut cops: Vec<usize>, mover: Mover) -> Self {
        cops.sort_unstable();
        Self { robber, cops, mover }
    }

    pub fn is_capture(&self) -> bool {
        self.cops.contains(&self.robber)
    }
}

/// Number of k-multisets over n symbols, saturating.
pub fn multiset_count(n: usize, k: usize) -> u64 {
    binomial(n as u64 + k as u64 - 1, k as u64)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// `2 · n · C(n + k − 1, k)`, saturating.
pub fn state_count(n: usize, k: usize) -> u64 {
    multiset_count(n, k).saturating_mul(n as u64).saturating_mul(2)
}

/// Ranks sorted k-multisets of `0..n` in colex order: the multiset
/// `c_0 ≤ … ≤ c_{k−1}` maps to `Σ C(c_i + i, i + 1)`.
#[derive(Debug, Clone)]
struct MultisetIndex {
    k: usize,
    // binom[i][m] = C(m, i + 1)
    binom: Vec<Vec<u64>>,
    // Flattened multisets in rank order.
    all: Vec<usize>,
}

impl MultisetIndex {
    fn new(n: usize, k: usize) -> Self {
        let binom = (0..k)
            .map(|i| (0..n + k).map(|m| binomial(m as u64, i as u64 + 1)).collect())
            .collect();
        let count = multiset_count(n, k) as usize;
        let mut all = Vec::with_capacity(count * k);
        let mut cur = vec![0usize; k];
        // Colex enumeration: increment the lowest position that may grow.
        for _ in 0..count {
            all.extend_from_slice(&cur);
            let mut i = 0;
            while i < k {
                let cap = if i + 1 < k { cur[i + 1] } else { n - 1 };
                if cur[i] < cap {
                    cur[i] += 1;
                    for v in &mut cur[..i] {
                        *v = 0;
                    }
                    break;
                }
                i += 1;
            }
        }
        Self { k, binom, all }
    }

    fn rank(&self, sorted: &[usize]) -> usize {
        sorted.iter().enumerate().map(|(i, &c)| self.binom[i][c + i] as usize).sum()
    }

    fn get(&self, rank: usize) -> &[usize] {
        &self.all[rank * self.k..(rank + 1) * self.k]
    }
}

/// Distinct cop multisets reachable in one cop move (each cop stays or steps
/// to a neighbor), as sorted ranks.
fn cop_moves(g: &Graph, idx: &MultisetIndex, cops: &[usize], out: &mut Vec<usize>) {
    out.clear();
    let k = cops.len();
    let opts: Vec<Vec<usize>> =
        cops.iter().map(|&c| g.closed_neighborhood(c).expect("valid cop vertex")).collect();
    let mut pick = vec![0usize; k];
    let mut buf = vec![0usize; k];
    loop {
        for i in 0..k {
            buf[i] = opts[i][pick[i]];
        }
        buf.sort_unstable();
        out.push(idx.rank(&buf));
        let mut i = 0;
        while i < k {
            pick[i] += 1;
            if pick[i] < opts[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    out.sort_unstable();
    out.dedup();
}

/// Solved k-cop game on a fixed graph.
#[derive(Debug, Clone)]
pub struct SolveTable {
    pub k: usize,
    graph: Graph,
    idx: MultisetIndex,
    // Half-moves to capture under optimal play, ROBBER_WIN if never.
    remoteness: Vec<u32>,
    initial: Option<(usize, u32)>,
}

impl SolveTable {
    fn slot(&self, robber: usize, rank: usize, mover: Mover) -> usize {
        state_slot(self.graph.n(), robber, rank, mover)
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn state_count(&self) -> usize {
        self.remoteness.len()
    }

    /// Half-moves to capture from `state` under optimal play, `None` if the
    /// robber escapes forever.
    pub fn remoteness(&self, state: &GameState) -> Option<u32> {
        let mut cops = state.cops.clone();
        cops.sort_unstable();
        let v = self.remoteness[self.slot(state.robber, self.idx.rank(&cops), state.mover)];
        (v != ROBBER_WIN).then_some(v)
    }

    pub fn is_cop_win(&self, state: &GameState) -> bool {
        self.remoteness(state).is_some()
    }

    /// Whether k cops catch the robber from the best initial placement.
    pub fn cops_win(&self) -> bool {
        self.initial.is_some()
    }

    /// Best cop placement (sorted) and the worst-case number of half-moves
    /// to capture after the robber places.
    pub fn initial_placement(&self) -> Option<(Vec<usize>, u32)> {
        self.initial.map(|(rank, rem)| (self.idx.get(rank).to_vec(), rem))
    }

    /// Cop reply in `(robber, cops)` with cops to move: the winning
    /// successor closest to capture (lowest rank on ties), otherwise the
    /// lowest-ranked legal move. Positions are returned sorted.
    pub fn cop_move(&self, robber: usize, cops: &[usize]) -> Vec<usize> {
        let mut sorted = cops.to_vec();
        sorted.sort_unstable();
        let mut moves = Vec::new();
        cop_moves(&self.graph, &self.idx, &sorted, &mut moves);
        let best = moves
            .iter()
            .copied()
            .min_by_key(|&m| (self.remoteness[self.slot(robber, m, Mover::Robber)], m))
            .expect("at least the stay-put move");
        self.idx.get(best).to_vec()
    }

    /// Robber reply with robber to move: stays out of cop-won states when
    /// possible and otherwise delays capture longest (lowest vertex on ties).
    pub fn robber_move(&self, robber: usize, cops: &[usize]) -> usize {
        let mut sorted = cops.to_vec();
        sorted.sort_unstable();
        let rank = self.idx.rank(&sorted);
        let nbhd = self.graph.closed_neighborhood(robber).expect("valid robber vertex");
        let mut best = nbhd[0];
        let mut best_val = self.remoteness[self.slot(best, rank, Mover::Cops)];
        for &v in &nbhd[1..] {
            let val = self.remoteness[self.slot(v, rank, Mover::Cops)];
            if val > best_val {
                best = v;
                best_val = val;
            }
        }
        best
    }

    /// Robber placement against `cops`: the vertex maximizing remoteness.
    pub fn robber_placement(&self, cops: &[usize]) -> usize {
        let mut sorted = cops.to_vec();
        sorted.sort_unstable();
        let rank = self.idx.rank(&sorted);
        (0..self.n())
            .max_by(|&a, &b| {
                let va = self.remoteness[self.slot(a, rank, Mover::Cops)];
                let vb = self.remoteness[self.slot(b, rank, Mover::Cops)];
                va.cmp(&vb).then(b.cmp(&a))
            })
            .expect("nonempty graph")
    }

    /// All labeled states, for JSON export of small instances.
    pub fn export(&self) -> TableExport {
        let n = self.n();
        let count = self.remoteness.len() / (2 * n);
        let mut states = Vec::with_capacity(self.remoteness.len());
        for rank in 0..count {
            for robber in 0..n {
                for mover in [Mover::Robber, Mover::Cops] {
                    let v = self.remoteness[self.slot(robber, rank, mover)];
                    states.push(ExportedState {
                        robber,
                        cops: self.idx.get(rank).to_vec(),
                        mover,
                        cop_win: v != ROBBER_WIN,
                        remoteness: (v != ROBBER_WIN).then_some(v),
                    });
                }
            }
        }
        TableExport {
            format_version: crate::geograph::io::FORMAT_VERSION,
            n,
            k: self.k,
            cops_win: self.cops_win(),
            initial_placement: self.initial_placement().map(|p| p.0),
            states,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExportedState {
    pub robber: usize,
    pub cops: Vec<usize>,
    pub mover: Mover,
    pub cop_win: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub remoteness: Option<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableExport {
    pub format_version: u32,
    pub n: usize,
    pub k: usize,
    pub cops_win: bool,
    pub initial_placement: Option<Vec<usize>>,
    pub states: Vec<ExportedState>,
}

fn state_slot(n: usize, robber: usize, rank: usize, mover: Mover) -> usize {
    ((rank * n + robber) << 1) | (mover == Mover::Cops) as usize
}

pub fn solve_game(g: &Graph, k: usize) -> Result<SolveTable, SolveError> {
    solve_game_with_budget(g, k, DEFAULT_STATE_BUDGET)
}

pub fn solve_game_with_budget(g: &Graph, k: usize, budget: u64) -> Result<SolveTable, SolveError> {
    let n = g.n();
    if n == 0 || k == 0 {
        return Err(SolveError::Trivial { k, n });
    }
    let states = state_count(n, k);
    if states > budget || states > (usize::MAX as u64) {
        return Err(SolveError::BudgetExceeded { states, budget });
    }
    let idx = MultisetIndex::new(n, k);
    let count = multiset_count(n, k) as usize;
    let mut rem = vec![ROBBER_WIN; states as usize];
    let mut queue = VecDeque::new();

    for rank in 0..count {
        let cops = idx.get(rank);
        for robber in 0..n {
            let rs = state_slot(n, robber, rank, Mover::Robber);
            if cops.contains(&robber) {
                rem[rs] = 0;
                rem[rs | 1] = 0;
                queue.push_back(rs);
                queue.push_back(rs | 1);
            } else {
                rem[rs] = PENDING | (g.degree(robber) as u32 + 1);
            }
        }
    }

    let mut moves = Vec::new();
    while let Some(s) = queue.pop_front() {
        let d = rem[s] + 1;
        let robber = (s >> 1) % n;
        let rank = (s >> 1) / n;
        if s & 1 == 0 {
            // Robber to move, cop-won: cop states reaching it win.
            cop_moves(g, &idx, idx.get(rank), &mut moves);
            for &prev in &moves {
                let ps = state_slot(n, robber, prev, Mover::Cops);
                if rem[ps] == ROBBER_WIN {
                    rem[ps] = d;
                    queue.push_back(ps);
                }
            }
        } else {
            // Cops to move, cop-won: robber states that can step here lose
            // one escape route.
            let mut step = |prev: usize| {
                let ps = state_slot(n, prev, rank, Mover::Robber);
                let v = rem[ps];
                if v & PENDING != 0 && v != ROBBER_WIN {
                    let left = (v & !PENDING) - 1;
                    if left == 0 {
                        rem[ps] = d;
                        queue.push_back(ps);
                    } else {
                        rem[ps] = PENDING | left;
                    }
                }
            };
            step(robber);
            for &prev in g.neighbors(robber) {
                step(prev);
            }
        }
    }
    for v in &mut rem {
        if *v & PENDING != 0 {
            *v = ROBBER_WIN;
        }
    }

    // Cops place, then the robber places against them.
    let mut initial: Option<(usize, u32)> = None;
    for rank in 0..count {
        let worst = (0..n)
            .map(|robber| rem[state_slot(n, robber, rank, Mover::Cops)])
            .max()
            .expect("n > 0");
        if worst != ROBBER_WIN && initial.map_or(true, |(_, w)| worst < w) {
            initial = Some((rank, worst));
        }
    }

    Ok(SolveTable { k, graph: g.clone(), idx, remoteness: rem, initial })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CopNumber {
    Exactly(usize),
    /// Robber escapes every `k ≤ k_max`.
    Exceeds(usize),
}

impl std::fmt::Display for CopNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CopNumber::Exactly(k) => write!(f, "{k}"),
            CopNumber::Exceeds(k) => write!(f, "> {k}"),
        }
    }
}

pub fn cop_number(g: &Graph, k_max: usize) -> Result<CopNumber, SolveError> {
    cop_number_with_budget(g, k_max, DEFAULT_STATE_BUDGET)
}

pub fn cop_number_with_budget(g: &Graph, k_max: usize, budget: u64) -> Result<CopNumber, SolveError> {
    for k in 1..=k_max {
        if solve_game_with_budget(g, k, budget)?.cops_win() {
            return Ok(CopNumber::Exactly(k));
        }
    }
    Ok(CopNumber::Exceeds(k_max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_ranking_is_a_bijection() {
        for (n, k) in [(1, 1), (5, 1), (4, 2), (6, 3), (3, 4)] {
            let idx = MultisetIndex::new(n, k);
            let count = multiset_count(n, k) as usize;
            assert_eq!(idx.all.len(), count * k);
            for r in 0..count {
                let m = idx.get(r);
                assert!(m.windows(2).all(|w| w[0] <= w[1]));
                assert!(m.iter().all(|&c| c < n));
                assert_eq!(idx.rank(m), r);
            }
        }
    }

    #[test]
    fn state_counts() {
        assert_eq!(state_count(10, 3), 2 * 10 * 220);
        assert_eq!(multiset_count(500, 2), 125_250);
        assert!(matches!(
            solve_game_with_budget(&Graph::cycle(50), 3, 1000),
            Err(SolveError::BudgetExceeded { states: 2_210_000, budget: 1000 })
        ));
    }

    #[test]
    fn anchors() {
        assert_eq!(cop_number(&Graph::path(5), 3).unwrap(), CopNumber::Exactly(1));
        assert_eq!(cop_number(&Graph::cycle(6), 3).unwrap(), CopNumber::Exactly(2));
        assert_eq!(cop_number(&Graph::petersen(), 3).unwrap(), CopNumber::Exactly(3));
        assert_eq!(cop_number(&Graph::petersen(), 2).unwrap(), CopNumber::Exceeds(2));
        assert_eq!(cop_number(&Graph::empty(1), 1).unwrap(), CopNumber::Exactly(1));
        // two components: a single cop cannot cover both
        assert_eq!(cop_number(&Graph::empty(2), 2).unwrap(), CopNumber::Exactly(2));
    }

    #[test]
    fn path3_capture_within_two_rounds() {
        let t = solve_game(&Graph::path(3), 1).unwrap();
        let (cops, worst) = t.initial_placement().unwrap();
        assert_eq!(cops, vec![1]);
        // cop reply captures at once after any robber placement
        assert_eq!(worst, 1);
    }

    #[test]
    fn recommendations_are_legal_and_progress() {
        let g = Graph::path(5);
        let t = solve_game(&g, 1).unwrap();
        let (cops, _) = t.initial_placement().unwrap();
        let mut robber = t.robber_placement(&cops);
        let mut cops = cops;
        for _ in 0..10 {
            if cops.contains(&robber) {
                return;
            }
            let next = t.cop_move(robber, &cops);
            assert!(g.is_adjacent_or_equal(cops[0], next[0]));
            cops = next;
            if cops.contains(&robber) {
                return;
            }
            let r2 = t.robber_move(robber, &cops);
            assert!(g.is_adjacent_or_equal(robber, r2));
            robber = r2;
        }
        panic!("no capture on P5");
    }

    #[test]
    fn export_is_consistent() {
        let t = solve_game(&Graph::cycle(4), 1).unwrap();
        let e = t.export();
        assert_eq!(e.states.len(), t.state_count());
        assert!(!e.cops_win);
        assert!(e.states.iter().all(|s| s.cop_win == s.cops.contains(&s.robber) || s.cop_win));
    }
}
