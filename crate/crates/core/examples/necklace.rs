//! Plants a necklace witness in a large random point set, finds it with
//! the lattice scan and confirms the graph is not dismantlable.

use geocop::constructions::{find_witness, planted_instance};
use geocop::geograph::build_graph;
use geocop::solver::dismantle;

fn main() {
    let (n, r) = (23_000, 0.06);
    let (ps, planted) = planted_instance(n, r, 4, 1).unwrap();
    let p = &planted.params;
    println!("N = {}, rho1 = {:.6}, rho2 = {:.3e}, lattice spacing {:.3}", p.n_corners, p.rho1, p.rho2, p.lattice_spacing);
    let g = build_graph(ps, r).unwrap();
    let w = find_witness(&g).unwrap().expect("planted witness");
    println!("witness at ({:.3}, {:.3}) with vertices {:?}", w.center.x, w.center.y, w.matched);
    println!("dismantlable: {}", dismantle(&g).copwin);
}
