//! Three cops patrol a geodesic path; the audit confirms every crossing of
//! the path ends in capture.

use geocop::ensembles::sample_uniform;
use geocop::geograph::build_graph;
use geocop::strategies::{audit_crossings, run_game, PatrolCops, RandomWalk};

fn main() {
    let g = build_graph(sample_uniform(250, 11), 0.15).unwrap();
    assert!(g.is_connected(), "pick another seed");
    let far = |s: usize| {
        let d = g.bfs_distances(s);
        (0..g.n()).max_by_key(|&v| d[v]).unwrap()
    };
    let a = far(0);
    let path = g.shortest_path(a, far(a)).unwrap();
    println!("patrolling a geodesic of {} vertices", path.len());

    let mut cops = PatrolCops::new(&g, path.clone(), 0);
    let mut robber = RandomWalk::new(&g);
    let trace = run_game(&g, &mut cops, &mut robber, 2000, 5).unwrap();
    match cops.positioned_round() {
        Some(p) => {
            let st = audit_crossings(g.points(), &path, &trace, p);
            println!("positioned at round {p}; {} crossings, {} violations", st.crossings, st.violations);
        }
        None => println!("never positioned"),
    }
    println!("outcome {:?}", trace.outcome);
}
