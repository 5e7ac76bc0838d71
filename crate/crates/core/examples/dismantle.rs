//! Greedy dismantling versus the center-order certificate on one random
//! geometric graph.

use geocop::ensembles::sample_uniform;
use geocop::geograph::build_graph;
use geocop::geometry::Point2;
use geocop::solver::{center_order_dismantle, center_pitfall_check, dismantle, verify_dismantling};

fn main() {
    let g = build_graph(sample_uniform(150, 3), 0.6).unwrap();
    let c = Point2::new(0.5, 0.5);

    let greedy = dismantle(&g);
    println!("greedy: copwin {} after {} removals, certificate valid {}",
        greedy.copwin, greedy.removal_order.len(), verify_dismantling(&g, &greedy));

    let check = center_pitfall_check(&g, c);
    println!("center check holds {} ({} violators)", check.holds, check.violators.len());

    let ordered = center_order_dismantle(&g, c);
    println!("center order: copwin {} blocked {:?}", ordered.copwin, ordered.blocked);
}
