use rand_chacha::ChaCha8Rng;

use super::engine::{CopPolicy, PolicyError, View};
use crate::solver::SolveTable;

/// Plays the cop side of a solved table. Cops that cannot win sit on
/// vertex 0 and still take captures offered to them.
pub struct SolverCop<'a> {
    table: &'a SolveTable,
}

impl<'a> SolverCop<'a> {
    pub fn new(table: &'a SolveTable) -> Self {
        Self { table }
    }
}

/// Assigns the sorted multiset `targets` back to cop identities so that
/// every cop moves to a vertex of its closed neighborhood.
fn assign(table: &SolveTable, cops: &[usize], targets: &[usize]) -> Option<Vec<usize>> {
    fn go(table: &SolveTable, cops: &[usize], targets: &[usize], used: &mut [bool], out: &mut Vec<usize>) -> bool {
        let i = out.len();
        if i == cops.len() {
            return true;
        }
        for j in 0..targets.len() {
            // skip duplicate targets already tried at this depth
            if used[j] || (j > 0 && targets[j] == targets[j - 1] && !used[j - 1]) {
                continue;
            }
            if !table.graph().is_adjacent_or_equal(cops[i], targets[j]) {
                continue;
            }
            used[j] = true;
            out.push(targets[j]);
            if go(table, cops, targets, used, out) {
                return true;
            }
            out.pop();
            used[j] = false;
        }
        false
    }
    let mut used = vec![false; targets.len()];
    let mut out = Vec::with_capacity(cops.len());
    go(table, cops, targets, &mut used, &mut out).then_some(out)
}

impl CopPolicy for SolverCop<'_> {
    fn name(&self) -> String {
        "solver".into()
    }

    fn cop_count(&self) -> usize {
        self.table.k
    }

    fn place(&mut self, _: &mut ChaCha8Rng) -> Result<Vec<usize>, PolicyError> {
        Ok(self.table.initial_placement().map_or_else(|| vec![0; self.table.k], |(p, _)| p))
    }

    fn respond(&mut self, view: View<'_>, _: &mut ChaCha8Rng) -> Result<Vec<usize>, PolicyError> {
        let targets = self.table.cop_move(view.robber, view.cops);
        assign(self.table, view.cops, &targets)
            .ok_or_else(|| PolicyError::Other(format!("no legal assignment of {targets:?} from {:?}", view.cops)))
    }
}
