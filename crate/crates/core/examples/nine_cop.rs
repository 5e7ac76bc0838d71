//! Nine cops shrink the robber's territory with guarded paths.

use geocop::ensembles::sample_uniform;
use geocop::geograph::build_graph;
use geocop::strategies::{run_game, Greedy, NineCop};

fn main() {
    let g = build_graph(sample_uniform(400, 9), 0.1).unwrap();
    let mut cops = NineCop::new(&g);
    let mut robber = Greedy::new(&g);
    let trace = run_game(&g, &mut cops, &mut robber, 20_000, 9).unwrap();
    println!("outcome {:?}, {} territory snapshots", trace.outcome, cops.snapshots().len());
    for snap in cops.snapshots().iter().take(10) {
        println!("  {snap:?}");
    }
}
