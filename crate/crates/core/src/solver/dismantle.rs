use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::geograph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DismantleResult {
    /// `(removed, dominator)` pairs in removal order.
    pub removal_order: Vec<(usize, usize)>,
    pub survivors: Vec<usize>,
    pub copwin: bool,
    /// First vertex whose removal could not be justified, for ordered
    /// dismantling; always `None` for greedy dismantling.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocked: Option<usize>,
}

/// Lowest-index active vertex `v ≠ u` with `N̄(u) ∩ A ⊆ N̄(v) ∩ A`.
pub fn find_dominator(g: &Graph, active: &[bool], u: usize) -> Option<usize> {
    // A dominator must itself lie in N̄(u), so only neighbors are tried.
    g.neighbors(u).iter().copied().filter(|&v| active[v]).find(|&v| {
        g.neighbors(u).iter().all(|&w| !active[w] || w == v || g.is_adjacent(v, w))
    })
}

/// Lowest-index pitfall `u` together with its lowest-index dominator.
pub fn find_pitfall(g: &Graph, active: &[bool]) -> Option<(usize, usize)> {
    (0..g.n()).filter(|&u| active[u]).find_map(|u| find_dominator(g, active, u).map(|v| (u, v)))
}

/// Removes the lowest-index pitfall until none is left.
///
/// Only neighbors of a removed vertex can become pitfalls, so a worklist
/// ordered by index reproduces the lowest-index choice of [`find_pitfall`]
/// without rescanning the whole graph. Memory is `O(n + m)`.
pub fn dismantle(g: &Graph) -> DismantleResult {
    let n = g.n();
    let mut active = vec![true; n];
    let mut work: BTreeSet<usize> = (0..n).collect();
    let mut removal_order = Vec::new();
    let mut remaining = n;
    while remaining > 1 {
        let Some(u) = work.pop_first() else { break };
        if !active[u] {
            continue;
        }
        if let Some(v) = find_dominator(g, &active, u) {
            active[u] = false;
            remaining -= 1;
            removal_order.push((u, v));
            work.extend(g.neighbors(u).iter().copied().filter(|&w| active[w]));
        }
    }
    let survivors: Vec<usize> = (0..n).filter(|&v| active[v]).collect();
    DismantleResult { copwin: survivors.len() == 1, survivors, removal_order, blocked: None }
}

/// Checks that `result` is a valid pitfall-removal sequence on `g`.
pub fn verify_dismantling(g: &Graph, result: &DismantleResult) -> bool {
    let mut active = vec![true; g.n()];
    for &(u, v) in &result.removal_order {
        if !active[u] || !active[v] || u == v || !g.is_adjacent(u, v) {
            return false;
        }
        if !g.neighbors(u).iter().all(|&w| !active[w] || w == v || g.is_adjacent(v, w)) {
            return false;
        }
        active[u] = false;
    }
    let left: Vec<usize> = (0..g.n()).filter(|&v| active[v]).collect();
    left == result.survivors && result.copwin == (left.len() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pitfall_examples() {
        let p3 = Graph::path(3);
        assert_eq!(find_pitfall(&p3, &[true; 3]), Some((0, 1)));
        assert_eq!(find_pitfall(&Graph::cycle(4), &[true; 4]), None);
        assert_eq!(find_pitfall(&Graph::complete(4), &[true; 4]), Some((0, 1)));
        // restricted to an active subset
        assert_eq!(find_pitfall(&Graph::cycle(4), &[false, true, true, true]), Some((1, 2)));
    }

    #[test]
    fn dismantle_examples() {
        let tree = Graph::from_edges(6, &[(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)]).unwrap();
        let res = dismantle(&tree);
        assert!(res.copwin);
        assert!(verify_dismantling(&tree, &res));

        let c4 = dismantle(&Graph::cycle(4));
        assert!(!c4.copwin);
        assert!(c4.removal_order.is_empty());

        let k5 = dismantle(&Graph::complete(5));
        assert!(k5.copwin);
        assert_eq!(k5.removal_order[0], (0, 1));

        assert!(dismantle(&Graph::empty(1)).copwin);
        assert!(!dismantle(&Graph::empty(2)).copwin);
        assert!(!dismantle(&Graph::empty(0)).copwin);
    }

    #[test]
    fn worklist_matches_naive_rescan() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(1..14);
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(0.45) {
                        edges.push((i, j));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let mut active = vec![true; n];
            let mut order = Vec::new();
            while active.iter().filter(|&&a| a).count() > 1 {
                let Some((u, v)) = find_pitfall(&g, &active) else { break };
                active[u] = false;
                order.push((u, v));
            }
            assert_eq!(dismantle(&g).removal_order, order);
        }
    }
}
