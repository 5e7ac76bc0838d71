//! Random geometric graph ensembles: sampling, the density condition `(†)`,
//! regime radii and Monte Carlo sweeps.

pub mod sweep;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::geograph::{GridIndex, PointSet};
use crate::geometry::{Point2, EPS};

pub use sweep::{
    parse_config, sweep, wilson_interval, write_sweep_csv, ConfigError, EnsembleSpec, Measurement, RadiusSpec,
    SweepRow, CSV_HEADER,
};

/// `n` i.i.d. uniform points in `[0, 1]²`.
pub fn sample_uniform(n: usize, seed: u64) -> PointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    PointSet::unit_square((0..n).map(|_| Point2::new(rng.gen(), rng.gen())).collect())
}

/// SplitMix64 finalizer of `master + (i + 1)·γ`; per-trial seeds.
pub fn mix_seed(master: u64, i: u64) -> u64 {
    let mut z = master.wrapping_add((i + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Tile side `1/⌈√(n / (2 ln n))⌉`; a single tile for `n < 3`.
pub fn tile_side(n: usize) -> f64 {
    if n < 3 {
        return 1.0;
    }
    let nf = n as f64;
    1.0 / (nf / (2.0 * nf.ln())).sqrt().ceil()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TilingCheck {
    pub sufficient: bool,
    pub empty_cells: usize,
    pub tile: f64,
}

/// Sufficient certificate for `(†)`: every tile occupied and `2√2·t ≤ s`.
pub fn dagger_tiling_check(ps: &PointSet, _r: f64, s: f64) -> TilingCheck {
    let t = tile_side(ps.len());
    let k = (1.0 / t).round() as usize;
    let mut seen = vec![false; k * k];
    for p in &ps.points {
        if !p.in_unit_square() {
            continue;
        }
        let cx = ((p.x / t) as usize).min(k - 1);
        let cy = ((p.y / t) as usize).min(k - 1);
        seen[cy * k + cx] = true;
    }
    let empty_cells = seen.iter().filter(|&&b| !b).count();
    let sufficient = empty_cells == 0 && 2.0 * std::f64::consts::SQRT_2 * t <= s;
    TilingCheck { sufficient, empty_cells, tile: t }
}

/// Smallest `s` the tiling certificate can ever accept for `n` points.
pub fn certificate_s(n: usize) -> f64 {
    2.0 * std::f64::consts::SQRT_2 * tile_side(n)
}

/// Samples `x` uniform in the square and `y` uniform in `B(x, r) ∩ [0,1]²`
/// and looks for a point in `B(x, r) ∩ B(y, s)`; returns the first pair
/// with none.
pub fn dagger_sampled_falsifier(ps: &PointSet, r: f64, s: f64, trials: usize, seed: u64) -> Option<(Point2, Point2)> {
    let pts = &ps.points;
    let index = GridIndex::new(pts, s.max(1e-6));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let x = Point2::new(rng.gen(), rng.gen());
        let y = loop {
            let y = Point2::new(x.x + rng.gen_range(-r..=r), x.y + rng.gen_range(-r..=r));
            if y.dist(x) <= r && y.in_unit_square() {
                break y;
            }
        };
        let mut hit = false;
        index.candidates(y, s + EPS, |j| {
            hit |= pts[j].dist(y) <= s + EPS && pts[j].dist(x) <= r + EPS;
        });
        if !hit {
            return Some((x, y));
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `K1 (ln n / n)^{1/4}`: two cops suffice.
    TwoCop,
    /// `K2 (ln n / n)^{1/5}`: cop-win.
    OneCop,
    /// `K3 ln n / √n`: not cop-win with positive probability.
    Lower,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::TwoCop => "two_cop",
            Regime::OneCop => "one_cop",
            Regime::Lower => "lower",
        }
    }
}

impl std::str::FromStr for Regime {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "two_cop" => Ok(Regime::TwoCop),
            "one_cop" => Ok(Regime::OneCop),
            "lower" => Ok(Regime::Lower),
            _ => Err(format!("unknown regime '{s}' (two_cop, one_cop, lower)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeConstants {
    pub k1: f64,
    /// Not given numerically in the source; tuned for desk-scale runs.
    pub k2: f64,
    /// Not given numerically in the source; tuned for desk-scale runs.
    pub k3: f64,
}

impl Default for RegimeConstants {
    fn default() -> Self {
        Self { k1: 3e5, k2: 2.0, k3: 0.2 }
    }
}

impl RegimeConstants {
    pub fn get(&self, regime: Regime) -> f64 {
        match regime {
            Regime::TwoCop => self.k1,
            Regime::OneCop => self.k2,
            Regime::Lower => self.k3,
        }
    }

    pub fn with(mut self, regime: Regime, k: f64) -> Self {
        match regime {
            Regime::TwoCop => self.k1 = k,
            Regime::OneCop => self.k2 = k,
            Regime::Lower => self.k3 = k,
        }
        self
    }
}

/// Regime radius with the natural logarithm; `n ≥ 2`.
pub fn regime_radius(n: usize, regime: Regime, k: &RegimeConstants) -> f64 {
    assert!(n >= 2, "regime radius needs n >= 2");
    let nf = n as f64;
    let l = nf.ln();
    let c = k.get(regime);
    match regime {
        Regime::TwoCop => c * (l / nf).powf(0.25),
        Regime::OneCop => c * (l / nf).powf(0.2),
        Regime::Lower => c * l / nf.sqrt(),
    }
}
