//! The tiling certificate for the approximation property, and a sampled
//! search for counterexamples when the certificate fails.

use geocop::ensembles::{certificate_s, dagger_sampled_falsifier, dagger_tiling_check, sample_uniform};

fn main() {
    for n in [100, 1000, 10_000] {
        let ps = sample_uniform(n, 3);
        let s = certificate_s(n);
        let cert = dagger_tiling_check(&ps, 0.1, s);
        println!("n = {n:6}: tile {:.4}, s = {s:.4}, empty tiles {}, sufficient {}", cert.tile, cert.empty_cells, cert.sufficient);
        let tight = s / 4.0;
        match dagger_sampled_falsifier(&ps, 0.1, tight, 10_000, 3) {
            Some((x, y)) => println!("          s = {tight:.4} fails: target ({:.3}, {:.3}) from ({:.3}, {:.3})", y.x, y.y, x.x, x.y),
            None => println!("          s = {tight:.4}: no counterexample found"),
        }
    }
}
