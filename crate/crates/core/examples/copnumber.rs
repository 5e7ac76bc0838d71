//! Exact cop numbers of a few small graphs with the retrograde solver.

use geocop::geograph::{build_graph, Graph};
use geocop::ensembles::sample_uniform;
use geocop::solver::{cop_number, solve_game, GameState, Mover};

fn main() {
    let named = [
        ("path P6", Graph::path(6)),
        ("cycle C5", Graph::cycle(5)),
        ("complete K5", Graph::complete(5)),
        ("Petersen", Graph::petersen()),
    ];
    for (name, g) in &named {
        println!("{name:12} c = {}", cop_number(g, 3).unwrap());
    }

    let g = build_graph(sample_uniform(40, 7), 0.3).unwrap();
    println!("RGG n=40 r=0.3  c = {}", cop_number(&g, 2).unwrap());

    // Remoteness of a single state on the Petersen graph with 3 cops.
    let table = solve_game(&Graph::petersen(), 3).unwrap();
    let (cops, rounds) = table.initial_placement().unwrap();
    println!("Petersen, 3 cops: start at {cops:?}, capture within {rounds} cop moves");
    let st = GameState::new(5, vec![0, 0, 0], Mover::Cops);
    println!("cops at 0,0,0 and robber at 5, cops to move: remoteness {:?}", table.remoteness(&st));
}
