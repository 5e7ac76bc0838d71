//! Builds the 1440-vertex annular graph and prints its report.

use geocop::constructions::{annular_graph, annular_report};

fn main() {
    let g = annular_graph().expect("self-check");
    let rep = annular_report(&g);
    println!("vertices          {}", rep.n);
    println!("edges             {}", rep.edges);
    println!("girth             {:?}", rep.metrics.girth.finite());
    println!("diameter          {:?}", rep.metrics.diameter.finite());
    println!("outer ring edge   {:.5}", rep.outer_edge);
    println!("inner ring edge   {:.5}", rep.inner_edge);
    println!("cop number >=     {}", rep.lower_bound);
    println!("dismantlable      {}", rep.copwin);
}
