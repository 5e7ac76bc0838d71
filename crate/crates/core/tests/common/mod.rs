//! Independent oracles. Nothing here calls the library's solver, BFS or
//! lens code; graphs come in as plain edge lists.
#![allow(dead_code)]

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Dense adjacency with self-loops, so `adj[u][v]` means `v ∈ N̄(u)`.
pub fn closed_adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(u, v) in edges {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

/// Brute-force geometric adjacency: all pairs at distance `≤ r + tol`.
pub fn brute_geometric_edges(pts: &[(f64, f64)], r: f64, tol: f64) -> Vec<(usize, usize)> {
    let mut e = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let (dx, dy) = (pts[i].0 - pts[j].0, pts[i].1 - pts[j].1);
            if (dx * dx + dy * dy).sqrt() <= r + tol {
                e.push((i, j));
            }
        }
    }
    e
}

/// Bounded-depth minimax: can `k` cops force a capture within `depth` cop
/// moves after the robber places? Plain recursion with memoization on
/// ordered cop tuples.
pub struct Minimax {
    adj: Vec<Vec<bool>>,
    n: usize,
    k: usize,
    memo: HashMap<(Vec<usize>, usize, usize), bool>,
}

impl Minimax {
    pub fn new(n: usize, edges: &[(usize, usize)], k: usize) -> Self {
        Self { adj: closed_adjacency(n, edges), n, k, memo: HashMap::new() }
    }

    fn cop_options(&self, cops: &[usize]) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for &c in cops {
            let mut next = Vec::new();
            for prefix in &out {
                for v in 0..self.n {
                    if self.adj[c][v] {
                        let mut p = prefix.clone();
                        p.push(v);
                        next.push(p);
                    }
                }
            }
            out = next;
        }
        out
    }

    /// Cops to move with `depth` moves left.
    fn cops_turn(&mut self, cops: Vec<usize>, robber: usize, depth: usize) -> bool {
        if depth == 0 {
            return false;
        }
        let key = (cops.clone(), robber, depth);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let mut win = false;
        for next in self.cop_options(&cops) {
            if next.contains(&robber) {
                win = true;
                break;
            }
            let moves: Vec<usize> = (0..self.n).filter(|&w| self.adj[robber][w]).collect();
            let robber_ok = moves.into_iter().all(|w| next.contains(&w) || self.cops_turn(next.clone(), w, depth - 1));
            if robber_ok {
                win = true;
                break;
            }
        }
        self.memo.insert(key, win);
        win
    }

    /// Some placement wins against every robber placement within `depth`.
    pub fn cops_win(&mut self, depth: usize) -> bool {
        let mut tuples = vec![Vec::new()];
        for _ in 0..self.k {
            tuples = tuples
                .into_iter()
                .flat_map(|p: Vec<usize>| (0..self.n).map(move |v| [p.clone(), vec![v]].concat()))
                .collect();
        }
        tuples.into_iter().any(|cops| (0..self.n).all(|r| cops.contains(&r) || self.cops_turn(cops.clone(), r, depth)))
    }

    /// Smallest `k' ≤ k_max` that wins within `depth`, if any.
    pub fn cop_number(n: usize, edges: &[(usize, usize)], k_max: usize, depth: usize) -> Option<usize> {
        (1..=k_max).find(|&k| Minimax::new(n, edges, k).cops_win(depth))
    }
}

/// Monte Carlo area of `B(p1, r) ∩ B(p2, r)` where `p1, p2` are the
/// intersection points of the circles of radius `r` around two centers at
/// distance `d` (`r ≤ d < 2r`).
pub fn monte_carlo_lens_area(d: f64, r: f64, samples: usize, seed: u64) -> f64 {
    // x = (0,0), y = (d,0): intersect |z| = r with |z - y| = d.
    let sx = r * r / (2.0 * d);
    let h = (r * r - sx * sx).sqrt();
    let (p1, p2) = ((sx, h), (sx, -h));
    let (x0, x1) = (sx - (r * r - h * h).sqrt(), sx + (r * r - h * h).sqrt());
    let (y0, y1) = (h - r, r - h);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hit = 0usize;
    for _ in 0..samples {
        let x = rng.gen_range(x0..x1);
        let y = rng.gen_range(y0..y1);
        let in1 = (x - p1.0).powi(2) + (y - p1.1).powi(2) <= r * r;
        let in2 = (x - p2.0).powi(2) + (y - p2.1).powi(2) <= r * r;
        if in1 && in2 {
            hit += 1;
        }
    }
    hit as f64 / samples as f64 * (x1 - x0) * (y1 - y0)
}

/// Erdős–Rényi style edge list.
pub fn random_edges(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut e = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                e.push((i, j));
            }
        }
    }
    e
}

pub fn random_points(n: usize, rng: &mut ChaCha8Rng) -> Vec<(f64, f64)> {
    (0..n).map(|_| (rng.gen(), rng.gen())).collect()
}
