//! The two-cop axis strategy on a dense random geometric graph, with the
//! stage history and the potential audit of the robber's walk.

use geocop::ensembles::{certificate_s, sample_uniform};
use geocop::geograph::build_graph;
use geocop::strategies::{potential_audit, run_game, Greedy, StrategyConstants, TwoCop};

fn main() {
    let n = 3000;
    let nf = n as f64;
    let r = 3.0 * (nf.ln() / nf).powf(0.25);
    let g = build_graph(sample_uniform(n, 42), r).unwrap();
    let k = StrategyConstants::relaxed(r, certificate_s(n));
    println!("r = {r:.4}, s = {:.4}, faithful constants: {}", k.s, k.is_faithful(r));

    let mut cops = TwoCop::new(&g, k);
    let mut robber = Greedy::new(&g);
    let trace = run_game(&g, &mut cops, &mut robber, 10 * k.horizon(r), 42).unwrap();
    println!("outcome {:?}", trace.outcome);
    for ev in cops.history().iter().take(8) {
        println!("  round {:4} cop {} {:?} -> {:?}", ev.round, ev.cop, ev.from, ev.to);
    }

    let walk: Vec<_> = trace.robber_path().into_iter().map(|v| g.point(v)).collect();
    let rep = potential_audit(&walk, r).unwrap();
    println!("audit: {} moves, {} pure T4, ok {}", rep.moves.len(), rep.pure_t4, rep.ok);
}
