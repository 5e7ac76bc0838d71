//! Lens regions between two points: closed-form area, membership and a
//! Monte Carlo cross-check.

use geocop::geometry::{lens_area, LensRegion, Point2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let r = 1.0;
    for d in [1.0, 1.5, 3.0, 10.0] {
        println!("d = {d:5}: area {:.6e}", lens_area(d, r).unwrap());
    }

    let x = Point2::new(0.0, 0.0);
    let y = Point2::new(2.0, 0.0);
    let lens = LensRegion::new(x, y, r).unwrap();
    let (lo, hi) = lens.bounding_box();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let samples = 1_000_000;
    let hits = (0..samples)
        .filter(|_| {
            let z = Point2::new(rng.gen_range(lo.x..=hi.x), rng.gen_range(lo.y..=hi.y));
            lens.contains(z)
        })
        .count();
    let est = hits as f64 / samples as f64 * (hi.x - lo.x) * (hi.y - lo.y);
    println!("d = 2: closed form {:.5}, Monte Carlo {:.5}", lens_area(2.0, r).unwrap(), est);
}
