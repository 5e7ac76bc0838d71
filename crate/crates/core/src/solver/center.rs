//! Dismantling towards a center point: vertices are peeled off in order of
//! decreasing distance from `c`, each one dominated inside the part of the
//! graph that is closer to `c`.

use serde::{Deserialize, Serialize};

use super::dismantle::{find_dominator, DismantleResult};
use crate::geograph::GeometricGraph;
use crate::geometry::{Point2, EPS};

/// `{j ~ i : ‖x_j − c‖ < ‖x_i − c‖}`, sorted. Distances within [`EPS`]
/// count as equal, so rounding never orders equidistant points.
pub fn nb_set(g: &GeometricGraph, i: usize, c: Point2) -> Vec<usize> {
    let di = g.point(i).dist(c);
    g.neighbors(i).iter().copied().filter(|&j| g.point(j).dist(c) < di - EPS).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterCheck {
    pub holds: bool,
    pub violators: Vec<usize>,
}

/// Every vertex at distance at least `r/2` from `c` must have some
/// `j ∈ nb(i)` adjacent-or-equal to all of `nb(i)`; equivalently `i` is a
/// pitfall of the subgraph induced by `{i} ∪ {closer vertices}`.
pub fn center_pitfall_check(g: &GeometricGraph, c: Point2) -> CenterCheck {
    let half = g.radius / 2.0;
    let violators: Vec<usize> = (0..g.n())
        .filter(|&i| g.point(i).dist(c) >= half)
        .filter(|&i| {
            let nb = nb_set(g, i, c);
            !nb.iter().any(|&j| nb.iter().all(|&w| w == j || g.is_adjacent(j, w)))
        })
        .collect();
    CenterCheck { holds: violators.is_empty(), violators }
}

/// Removes vertices by decreasing distance from `c` (ties by index) until
/// all survivors lie strictly inside `B(c, r/2)`. A survivor set that is a
/// clique is then dismantled completely.
pub fn center_order_dismantle(g: &GeometricGraph, c: Point2) -> DismantleResult {
    let n = g.n();
    let half = g.radius / 2.0;
    let dist: Vec<f64> = g.points().iter().map(|p| p.dist(c)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| dist[b].total_cmp(&dist[a]).then(a.cmp(&b)));

    let mut active = vec![true; n];
    let mut removal_order = Vec::new();
    let mut remaining = n;
    let mut blocked = None;
    for &i in &order {
        if dist[i] < half || remaining <= 1 {
            break;
        }
        match find_dominator(g, &active, i) {
            Some(v) => {
                active[i] = false;
                remaining -= 1;
                removal_order.push((i, v));
            }
            None => {
                blocked = Some(i);
                break;
            }
        }
    }

    let mut survivors: Vec<usize> = (0..n).filter(|&v| active[v]).collect();
    let clique = survivors
        .iter()
        .enumerate()
        .all(|(a, &u)| survivors[a + 1..].iter().all(|&v| g.is_adjacent(u, v)));
    let copwin = blocked.is_none() && !survivors.is_empty() && clique;
    if copwin {
        let keep = survivors[survivors.len() - 1];
        for &u in &survivors[..survivors.len() - 1] {
            removal_order.push((u, keep));
        }
        survivors = vec![keep];
    }
    DismantleResult { removal_order, survivors, copwin, blocked }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geograph::{build_graph, PointSet};
    use crate::solver::dismantle::verify_dismantling;

    fn geo(v: &[(f64, f64)], r: f64) -> GeometricGraph {
        build_graph(PointSet::new(v.iter().map(|&(x, y)| Point2::new(x, y)).collect()), r).unwrap()
    }

    #[test]
    fn nb_examples() {
        let g = geo(&[(0.5, 0.5), (0.8, 0.5), (0.85, 0.5), (0.5, 0.8)], 1.0);
        let c = Point2::new(0.5, 0.5);
        assert!(nb_set(&g, 0, c).is_empty());
        assert_eq!(nb_set(&g, 2, c), vec![0, 1, 3]);
        // equidistant pair: neither in the other's nb
        assert!(!nb_set(&g, 1, c).contains(&3));
        assert!(!nb_set(&g, 3, c).contains(&1));
    }

    #[test]
    fn check_examples() {
        let g = geo(&[(0.5, 0.5), (0.55, 0.5), (0.5, 0.45)], 0.3);
        assert!(center_pitfall_check(&g, Point2::new(0.5, 0.5)).holds);
        let c4 = geo(&[(0., 0.), (1., 0.), (0., 1.), (1., 1.)], 1.0);
        let chk = center_pitfall_check(&c4, Point2::new(0.5, 0.5));
        assert!(!chk.holds);
        assert_eq!(chk.violators, vec![0, 1, 2, 3]);
    }

    #[test]
    fn ordered_dismantle_examples() {
        let k = geo(&[(0.1, 0.1), (0.9, 0.9), (0.5, 0.4), (0.2, 0.7)], 2f64.sqrt());
        let res = center_order_dismantle(&k, Point2::new(0.5, 0.5));
        assert!(res.copwin);
        assert_eq!(res.removal_order[0].0, 0);
        assert!(verify_dismantling(k.graph(), &res));

        let c4 = geo(&[(0., 0.), (1., 0.), (0., 1.), (1., 1.)], 1.0);
        let res = center_order_dismantle(&c4, Point2::new(0.5, 0.5));
        assert!(!res.copwin);
        assert_eq!(res.blocked, Some(0));
    }

    #[test]
    fn far_single_vertex_is_copwin() {
        let g = geo(&[(0.0, 0.0)], 0.1);
        let res = center_order_dismantle(&g, Point2::new(1.0, 1.0));
        assert!(res.copwin);
        assert!(center_order_dismantle(&geo(&[], 0.1), Point2::new(0.5, 0.5)).survivors.is_empty());
    }
}
