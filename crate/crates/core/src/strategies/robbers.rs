use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::engine::{PolicyError, RobberPolicy};
use crate::geograph::Graph;
use crate::solver::SolveTable;

/// Uniform step over `N̄(R)`; placement uniform over cop-free vertices when
/// there are any.
pub struct RandomWalk<'a> {
    g: &'a Graph,
}

impl<'a> RandomWalk<'a> {
    pub fn new(g: &'a Graph) -> Self {
        Self { g }
    }
}

impl RobberPolicy for RandomWalk<'_> {
    fn name(&self) -> String {
        "random".into()
    }

    fn place(&mut self, cops: &[usize], rng: &mut ChaCha8Rng) -> Result<usize, PolicyError> {
        let free: Vec<usize> = (0..self.g.n()).filter(|v| !cops.contains(v)).collect();
        if free.is_empty() {
            return Ok(rng.gen_range(0..self.g.n()));
        }
        Ok(free[rng.gen_range(0..free.len())])
    }

    fn step(&mut self, robber: usize, _: &[usize], rng: &mut ChaCha8Rng) -> Result<usize, PolicyError> {
        let deg = self.g.degree(robber);
        let pick = rng.gen_range(0..=deg);
        Ok(if pick == deg { robber } else { self.g.neighbors(robber)[pick] })
    }
}

/// Maximizes the graph distance to the nearest cop, lowest index on ties.
pub struct Greedy<'a> {
    g: &'a Graph,
}

impl<'a> Greedy<'a> {
    pub fn new(g: &'a Graph) -> Self {
        Self { g }
    }

    fn best(&self, candidates: impl Iterator<Item = usize>, cops: &[usize]) -> usize {
        let dist = self.g.multi_source_bfs(cops.iter().copied());
        // Unreachable (u32::MAX) sorts as farthest.
        candidates
            .min_by_key(|&v| (std::cmp::Reverse(dist[v]), v))
            .expect("nonempty candidate set")
    }
}

impl RobberPolicy for Greedy<'_> {
    fn name(&self) -> String {
        "greedy".into()
    }

    fn place(&mut self, cops: &[usize], _: &mut ChaCha8Rng) -> Result<usize, PolicyError> {
        Ok(self.best(0..self.g.n(), cops))
    }

    fn step(&mut self, robber: usize, cops: &[usize], _: &mut ChaCha8Rng) -> Result<usize, PolicyError> {
        let nb = self.g.closed_neighborhood(robber).map_err(|e| PolicyError::Other(e.to_string()))?;
        Ok(self.best(nb.into_iter(), cops))
    }
}

/// Plays the robber side of a solved table.
pub struct SolverRobber<'a> {
    table: &'a SolveTable,
}

impl<'a> SolverRobber<'a> {
    pub fn new(table: &'a SolveTable) -> Self {
        Self { table }
    }
}

impl RobberPolicy for SolverRobber<'_> {
    fn name(&self) -> String {
        "solver".into()
    }

    fn place(&mut self, cops: &[usize], _: &mut ChaCha8Rng) -> Result<usize, PolicyError> {
        check_k(self.table, cops)?;
        Ok(self.table.robber_placement(cops))
    }

    fn step(&mut self, robber: usize, cops: &[usize], _: &mut ChaCha8Rng) -> Result<usize, PolicyError> {
        check_k(self.table, cops)?;
        Ok(self.table.robber_move(robber, cops))
    }
}

fn check_k(table: &SolveTable, cops: &[usize]) -> Result<(), PolicyError> {
    if cops.len() != table.k {
        return Err(PolicyError::Other(format!("table solved for {} cops, game has {}", table.k, cops.len())));
    }
    Ok(())
}
