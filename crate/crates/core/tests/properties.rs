//! Randomized properties across modules.

mod common;

use std::f64::consts::PI;

use geocop::constructions::{plant_necklace, witness_check, NecklaceParams};
use geocop::ensembles::{
    dagger_sampled_falsifier, dagger_tiling_check, mix_seed, regime_radius, sample_uniform, Regime, RegimeConstants,
};
use geocop::geograph::{build_graph, graph_metrics, Graph, PointSet};
use geocop::geometry::{lens_area, segments_intersect, LensRegion, Point2, Segment};
use geocop::solver::{center_order_dismantle, dismantle, solve_game, GameState, Mover};
use geocop::strategies::{
    classify_move, run_game, verify_trace, Greedy, MoveType, NineCop, RandomWalk, RobberPolicy, SolverCop,
    SolverRobber, Trace,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{brute_geometric_edges, monte_carlo_lens_area, random_edges};

fn pt() -> impl Strategy<Value = Point2> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(x, y)| Point2::new(x, y))
}

fn graph_from_seed(seed: u64, n: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = rng.gen_range(0.2..0.7);
    Graph::from_edges(n, &random_edges(n, p, &mut rng)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn segment_intersection_symmetric_and_rigid(a in pt(), b in pt(), c in pt(), d in pt(),
                                                 tx in -3.0..3.0f64, ty in -3.0..3.0f64) {
        let s1 = Segment::new(a, b);
        let s2 = Segment::new(c, d);
        let hit = segments_intersect(&s1, &s2);
        prop_assert_eq!(hit, segments_intersect(&s2, &s1));
        prop_assert_eq!(hit, segments_intersect(&Segment::new(b, a), &Segment::new(d, c)));
        // quarter turn, reflection and a translation by dyadic offsets are exact
        let rot = |p: Point2| Point2::new(-p.y, p.x);
        prop_assert_eq!(hit, segments_intersect(&Segment::new(rot(a), rot(b)), &Segment::new(rot(c), rot(d))));
        prop_assert_eq!(hit, segments_intersect(&Segment::new(a.transposed(), b.transposed()),
                                                &Segment::new(c.transposed(), d.transposed())));
        let sh = Point2::new((tx * 64.0).round() / 64.0, (ty * 64.0).round() / 64.0);
        let shifted = |p: Point2| p + sh;
        let moved = segments_intersect(&Segment::new(shifted(a), shifted(b)), &Segment::new(shifted(c), shifted(d)));
        // translation rounding can only matter within the tolerance band
        let gap = s1.distance_to(c).min(s1.distance_to(d)).min(s2.distance_to(a)).min(s2.distance_to(b));
        prop_assert!(moved == hit || gap < 1e-6);
    }

    #[test]
    fn lens_area_is_nonincreasing(r in 0.01..2.0f64, f1 in 1.0..5.0f64, f2 in 1.0..5.0f64) {
        let (lo, hi) = if f1 <= f2 { (f1, f2) } else { (f2, f1) };
        prop_assert!(lens_area(hi * r, r).unwrap() <= lens_area(lo * r, r).unwrap() + 1e-15);
    }

    #[test]
    fn build_graph_matches_brute_force(seed in any::<u64>(), n in 0usize..120, r in 0.01..0.6f64) {
        let ps = sample_uniform(n, seed);
        let raw: Vec<(f64, f64)> = ps.points.iter().map(|p| (p.x, p.y)).collect();
        let g = build_graph(ps, r).unwrap();
        let mut got: Vec<(usize, usize)> = g.edges().collect();
        got.sort_unstable();
        prop_assert_eq!(got, brute_geometric_edges(&raw, r, 1e-9));
    }

    #[test]
    fn shortest_paths_are_bfs_geodesics(seed in any::<u64>(), n in 2usize..80) {
        let g = build_graph(sample_uniform(n, seed), 0.25).unwrap();
        let d = g.bfs_distances(0);
        for v in 0..n {
            match g.shortest_path(0, v) {
                Some(p) => {
                    prop_assert_eq!(p.len() as u32 - 1, d[v]);
                    prop_assert!(p.windows(2).all(|w| g.is_adjacent(w[0], w[1])));
                }
                None => prop_assert_eq!(d[v], u32::MAX),
            }
        }
    }

    #[test]
    fn close_triangle_has_girth_three(seed in any::<u64>(), n in 0usize..40) {
        let mut pts = sample_uniform(n, seed).points;
        pts.extend([Point2::new(0.5, 0.5), Point2::new(0.52, 0.5), Point2::new(0.5, 0.52)]);
        let g = build_graph(PointSet::new(pts), 0.05).unwrap();
        prop_assert_eq!(graph_metrics(&g).girth.finite(), Some(3));
    }

    #[test]
    fn every_displacement_has_a_type(d in 0.0..=1.0f64, theta in -10.0..10.0f64) {
        let t = classify_move(d, theta, 1.0).unwrap();
        prop_assert!(!t.is_empty());
        prop_assert_eq!(t.contains(MoveType::T1), d <= 0.5);
        if d <= 0.5 {
            prop_assert!(t.only(MoveType::T1));
        }
    }

    #[test]
    fn regime_radius_decreases(n in 8usize..100_000, step in 1usize..1000) {
        let k = RegimeConstants::default();
        for regime in [Regime::TwoCop, Regime::OneCop, Regime::Lower] {
            prop_assert!(regime_radius(n + step, regime, &k) < regime_radius(n, regime, &k));
        }
    }

    #[test]
    fn trial_seeds_are_deterministic(master in any::<u64>(), i in 0u64..1000) {
        prop_assert_eq!(mix_seed(master, i), mix_seed(master, i));
        prop_assert_ne!(mix_seed(master, i), mix_seed(master, i + 1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lens_monte_carlo_within_three_se(r in 0.2..2.0f64, f in 1.001..1.99f64, seed in any::<u64>()) {
        let d = f * r;
        let samples = 200_000;
        let exact = lens_area(d, r).unwrap();
        let est = monte_carlo_lens_area(d, r, samples, seed);
        // bounding box of the sampler: width 2√(r² − h²), height 2(r − h)
        let sx = r * r / (2.0 * d);
        let h = (r * r - sx * sx).sqrt();
        let box_area = 2.0 * (r * r - h * h).sqrt() * 2.0 * (r - h);
        let q = exact / box_area;
        let se = box_area * (q * (1.0 - q) / samples as f64).sqrt();
        prop_assert!((est - exact).abs() <= 3.0 * se + 1e-12, "exact {} est {} se {}", exact, est, se);
    }

    #[test]
    fn lens_covers_the_cap_both_ways(x in pt(), ang in 0.0..(2.0 * PI), r in 0.1..1.0f64, f in 1.05..4.0f64, seed in any::<u64>()) {
        let d = f * r;
        let y = x + Point2::new(ang.cos(), ang.sin()) * d;
        let lens = LensRegion::new(x, y, r).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // region K = B(x, r) ∩ B(y, d), sampled by rejection
        let sample_k = |rng: &mut ChaCha8Rng| loop {
            let w = x + Point2::new(rng.gen_range(-r..r), rng.gen_range(-r..r));
            if w.dist(x) <= r && w.dist(y) <= d {
                return w;
            }
        };
        let (lo, hi) = lens.bounding_box();
        for _ in 0..20 {
            let z = loop {
                let z = Point2::new(rng.gen_range(lo.x..=hi.x), rng.gen_range(lo.y..=hi.y));
                if lens.contains(z) {
                    break z;
                }
            };
            for _ in 0..200 {
                let w = sample_k(&mut rng);
                prop_assert!(w.dist(z) <= r + 1e-9);
            }
        }
        // outside the lens some point of K (a corner p1 or p2) is out of reach
        for p in [lens.p1, lens.p2] {
            prop_assert!(p.dist(x) <= r + 1e-9 && p.dist(y) <= d + 1e-9);
        }
        for _ in 0..50 {
            let z = x + Point2::new(rng.gen_range(-2.0 * r..2.0 * r), rng.gen_range(-2.0 * r..2.0 * r));
            if !lens.contains(z) {
                prop_assert!(z.dist(lens.p1) > r || z.dist(lens.p2) > r);
            }
        }
    }

    #[test]
    fn solver_is_monotone_in_k(seed in any::<u64>(), n in 1usize..8) {
        let g = graph_from_seed(seed, n);
        if solve_game(&g, 1).unwrap().cops_win() {
            prop_assert!(solve_game(&g, 2).unwrap().cops_win());
        }
        if solve_game(&g, 2).unwrap().cops_win() {
            prop_assert!(solve_game(&g, 3).unwrap().cops_win());
        }
    }

    #[test]
    fn labels_ignore_cop_order(seed in any::<u64>(), n in 2usize..8) {
        let g = graph_from_seed(seed, n);
        let t = solve_game(&g, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..30 {
            let cops: Vec<usize> = (0..3).map(|_| rng.gen_range(0..n)).collect();
            let robber = rng.gen_range(0..n);
            for mover in [Mover::Cops, Mover::Robber] {
                let base = t.remoteness(&GameState::new(robber, cops.clone(), mover));
                for perm in [[1, 0, 2], [2, 1, 0], [1, 2, 0]] {
                    let p: Vec<usize> = perm.iter().map(|&i| cops[i]).collect();
                    prop_assert_eq!(t.remoteness(&GameState::new(robber, p, mover)), base);
                }
            }
        }
    }

    #[test]
    fn center_order_success_is_a_dismantling(seed in any::<u64>(), n in 5usize..120, r in 0.2..1.0f64) {
        let g = build_graph(sample_uniform(n, seed), r).unwrap();
        let c = Point2::new(0.5, 0.5);
        if center_order_dismantle(&g, c).copwin {
            prop_assert!(dismantle(&g).copwin);
        }
    }

    #[test]
    fn optimal_cops_capture_within_the_state_count(seed in any::<u64>(), n in 2usize..9, robber_kind in 0usize..3) {
        let g = graph_from_seed(seed, n);
        if !g.is_connected() {
            return Ok(());
        }
        let k = (1..=3).find(|&k| solve_game(&g, k).unwrap().cops_win()).unwrap();
        let t = solve_game(&g, k).unwrap();
        let mut cops = SolverCop::new(&t);
        let mut robber: Box<dyn RobberPolicy> = match robber_kind {
            0 => Box::new(RandomWalk::new(&g)),
            1 => Box::new(Greedy::new(&g)),
            _ => Box::new(SolverRobber::new(&t)),
        };
        let tr = run_game(&g, &mut cops, robber.as_mut(), t.state_count(), seed).unwrap();
        prop_assert!(tr.outcome.captured());
        verify_trace(&g, &tr).unwrap();
    }

    #[test]
    fn tiling_certificate_implies_no_falsifier(seed in any::<u64>(), n in 200usize..3000) {
        let ps = sample_uniform(n, seed);
        let s = geocop::ensembles::certificate_s(n);
        let r = 0.3;
        if dagger_tiling_check(&ps, r, s).sufficient {
            prop_assert!(dagger_sampled_falsifier(&ps, r, s, 2000, seed).is_none());
        }
    }

    #[test]
    fn traces_are_legal_and_round_trip(seed in any::<u64>(), n in 20usize..200) {
        let g = build_graph(sample_uniform(n, seed), 0.3).unwrap();
        let mut cops = NineCop::new(&g);
        let mut robber = RandomWalk::new(&g);
        let tr = run_game(&g, &mut cops, &mut robber, 300, seed).unwrap();
        verify_trace(&g, &tr).unwrap();
        let mut buf = Vec::new();
        tr.write_jsonl(&mut buf).unwrap();
        prop_assert_eq!(Trace::read_jsonl(&buf[..]).unwrap(), tr);
    }

    #[test]
    fn planted_witnesses_certify(seed in any::<u64>(), corners in 5usize..10, spokes in 0usize..4) {
        let p = NecklaceParams::with_corners(corners, 0.09).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pl = plant_necklace(Point2::new(0.5, 0.5), &p, spokes, &mut rng).unwrap();
        let g = build_graph(PointSet::new(pl.points.clone()), p.r).unwrap();
        let w = witness_check(&g, &pl.corners, p.rho2).unwrap();
        prop_assert_eq!(&w.matched, &pl.matched);
        prop_assert!(!dismantle(&g).copwin);
        // each cycle vertex is the only common neighbor of its two cycle neighbors
        let m = &w.matched;
        for i in 0..m.len() {
            let (a, b) = (m[(i + m.len() - 1) % m.len()], m[(i + 1) % m.len()]);
            let common: Vec<usize> = g.neighbors(a).iter().copied().filter(|&v| g.is_adjacent(v, b)).collect();
            prop_assert_eq!(common, vec![m[i]]);
        }
    }
}

/// Non-crossing geometry: a robber step of length at most r
/// cannot cross a path edge of length at most r when the far endpoints
/// stay out of reach.
#[test]
fn short_steps_never_cross_guarded_edges() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let r = 1.0;
    let mut accepted = 0usize;
    let mut unguarded_crossings = 0usize;
    while accepted < 1_000_000 {
        let vi = Point2::new(0.0, 0.0);
        let a = rng.gen::<f64>() * 2.0 * PI;
        let vj = vi + Point2::new(a.cos(), a.sin()) * (r * rng.gen::<f64>().sqrt());
        // start in the annulus r < |R^t - v_i| < 1.5r so crossings are reachable
        let c = rng.gen::<f64>() * 2.0 * PI;
        let rt = vi + Point2::new(c.cos(), c.sin()) * rng.gen_range(r..1.5 * r);
        let b = rng.gen::<f64>() * 2.0 * PI;
        let rt1 = rt + Point2::new(b.cos(), b.sin()) * (r * rng.gen::<f64>().sqrt());
        if rt.dist(vi) <= r || rt1.dist(vi) <= r {
            continue;
        }
        let crosses = segments_intersect(&Segment::new(rt, rt1), &Segment::new(vi, vj));
        if rt1.dist(vj) <= r {
            unguarded_crossings += crosses as usize;
            continue;
        }
        accepted += 1;
        assert!(!crosses, "crossing: v_i={vi:?} v_i+1={vj:?} R^t={rt:?} R^t+1={rt1:?}");
    }
    // the sampler does reach the crossing region when a guard is dropped
    assert!(unguarded_crossings > 20, "unguarded crossings {unguarded_crossings}");
}
