//! Necklace witnesses. A regular `N`-gon with side `ρ1` is *good* when each
//! corner disc `B(c_i, ρ2)` holds exactly one point `x_{j_i}` and `x_{j_i}`
//! is the only common neighbor of `x_{j_{i−1}}` and `x_{j_{i+1}}`. Then no
//! `x_{j_i}` is ever a pitfall and the graph is not cop-win.

use std::f64::consts::PI;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geograph::{GeometricGraph, PointSet};
use crate::geometry::{Point2, EPS};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NecklaceError {
    #[error("N = {0} is below 3")]
    TooFewCorners(usize),
    #[error("n and r must be positive (n = {n}, r = {r})")]
    BadInput { n: usize, r: f64 },
    #[error("polygon around ({x}, {y}) leaves the unit square")]
    OutOfSquare { x: f64, y: f64 },
    #[error("lattice spacing {0} exceeds the unit square")]
    NoLattice(f64),
    #[error("planted instance needs {needed} points but n = {n}")]
    TooManyPlanted { needed: usize, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NecklaceParams {
    #[serde(rename = "N")]
    pub n_corners: usize,
    pub r: f64,
    pub rho1: f64,
    pub rho2: f64,
    pub polygon_diam: f64,
    pub lattice_spacing: f64,
}

impl NecklaceParams {
    /// Parameters for an `N`-gon at connectivity radius `r`.
    pub fn with_corners(n_corners: usize, r: f64) -> Result<Self, NecklaceError> {
        if n_corners < 3 {
            return Err(NecklaceError::TooFewCorners(n_corners));
        }
        let nn = (n_corners * n_corners) as f64;
        let rho1 = r - r / nn;
        let rho2 = r / (2.0 * nn);
        let circ = rho1 / (2.0 * (PI / n_corners as f64).sin());
        let polygon_diam =
            if n_corners % 2 == 0 { 2.0 * circ } else { 2.0 * circ * (PI / (2.0 * n_corners as f64)).cos() };
        Ok(Self { n_corners, r, rho1, rho2, polygon_diam, lattice_spacing: 10.0 * polygon_diam })
    }

    pub fn circumradius(&self) -> f64 {
        self.rho1 / (2.0 * (PI / self.n_corners as f64).sin())
    }

    /// Lattice centers `(spacing/2 + a·spacing, spacing/2 + b·spacing)`
    /// inside the square, row-major.
    pub fn lattice_centers(&self) -> Vec<Point2> {
        let s = self.lattice_spacing;
        let k = ((1.0 + 1e-12) / s).floor() as usize;
        (0..k)
            .flat_map(|b| (0..k).map(move |a| Point2::new(s / 2.0 + a as f64 * s, s / 2.0 + b as f64 * s)))
            .collect()
    }
}

/// `N = ⌈(nπr²)^{1/4}⌉` with `ρ1 = r − r/N²`, `ρ2 = r/(2N²)`.
pub fn necklace_params(n: usize, r: f64) -> Result<NecklaceParams, NecklaceError> {
    if n == 0 || !(r > 0.0) {
        return Err(NecklaceError::BadInput { n, r });
    }
    let big_n = (n as f64 * PI * r * r).powf(0.25).ceil() as usize;
    NecklaceParams::with_corners(big_n, r)
}

/// Corners of the regular `N`-gon with side `ρ1` around `center`, the first
/// at angle 0.
pub fn place_polygon(center: Point2, params: &NecklaceParams) -> Result<Vec<Point2>, NecklaceError> {
    let circ = params.circumradius();
    let n = params.n_corners;
    let corners: Vec<Point2> = (0..n)
        .map(|i| {
            let a = 2.0 * PI * i as f64 / n as f64;
            center + Point2::new(a.cos(), a.sin()) * circ
        })
        .collect();
    if corners.iter().all(|c| c.in_unit_square()) {
        Ok(corners)
    } else {
        Err(NecklaceError::OutOfSquare { x: center.x, y: center.y })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NecklaceWitness {
    pub center: Point2,
    pub corners: Vec<Point2>,
    pub matched: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum WitnessFailure {
    #[error("corner disc {corner} holds {count} points")]
    DiscCount { corner: usize, count: usize },
    #[error("neighbors of corner {corner} share {common:?}")]
    CommonNeighbors { corner: usize, common: Vec<usize> },
}

/// Verifies the corner discs and the unique-common-neighbor condition.
pub fn witness_check(g: &GeometricGraph, corners: &[Point2], rho2: f64) -> Result<NecklaceWitness, WitnessFailure> {
    let n = corners.len();
    let mut matched = Vec::with_capacity(n);
    for (i, &c) in corners.iter().enumerate() {
        let inside = g.vertices_within(c, rho2);
        if inside.len() != 1 {
            return Err(WitnessFailure::DiscCount { corner: i, count: inside.len() });
        }
        matched.push(inside[0]);
    }
    let r = g.radius;
    for i in 0..n {
        let (a, b) = (matched[(i + n - 1) % n], matched[(i + 1) % n]);
        let (pa, pb) = (g.point(a), g.point(b));
        let mut common: Vec<usize> =
            g.vertices_within(pa, r).into_iter().filter(|&v| g.point(v).dist(pb) <= r + EPS).collect();
        common.sort_unstable();
        if common != [matched[i]] {
            return Err(WitnessFailure::CommonNeighbors { corner: i, common });
        }
    }
    let center = corners.iter().fold(Point2::new(0.0, 0.0), |s, &c| s + c) * (1.0 / n as f64);
    Ok(NecklaceWitness { center, corners: corners.to_vec(), matched })
}

/// First good polygon over the lattice of centers, in row-major order.
/// When not even one lattice cell fits in the square there is no witness.
pub fn find_witness(g: &GeometricGraph) -> Result<Option<NecklaceWitness>, NecklaceError> {
    if g.n() == 0 {
        return Ok(None);
    }
    let params = necklace_params(g.n(), g.radius)?;
    let centers = params.lattice_centers();
    Ok(centers.par_iter().find_map_first(|&c| {
        let corners = place_polygon(c, &params).ok()?;
        witness_check(g, &corners, params.rho2).ok()
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantedNecklace {
    pub points: Vec<Point2>,
    pub center: Point2,
    pub corners: Vec<Point2>,
    /// Indices of the corner points in `points`.
    pub matched: Vec<usize>,
    pub params: NecklaceParams,
}

/// One point near each corner (uniform in `B(c_i, ρ2/2)`), followed by
/// `spoke_points` points per corner stepping `r/4` radially outward.
/// Spoke points leaving the square are dropped.
pub fn plant_necklace(
    center: Point2,
    params: &NecklaceParams,
    spoke_points: usize,
    rng: &mut ChaCha8Rng,
) -> Result<PlantedNecklace, NecklaceError> {
    plant_with(center, params, spoke_points, |c| {
        let rad = params.rho2 / 2.0 * rng.gen::<f64>().sqrt();
        let a = rng.gen::<f64>() * 2.0 * PI;
        c + Point2::new(a.cos(), a.sin()) * rad
    })
}

/// As [`plant_necklace`] with every corner point exactly on its corner, so
/// all corners are equidistant from the center.
pub fn plant_exact_necklace(center: Point2, params: &NecklaceParams, spoke_points: usize) -> Result<PlantedNecklace, NecklaceError> {
    plant_with(center, params, spoke_points, |c| c)
}

fn plant_with(
    center: Point2,
    params: &NecklaceParams,
    spoke_points: usize,
    mut corner_point: impl FnMut(Point2) -> Point2,
) -> Result<PlantedNecklace, NecklaceError> {
    let corners = place_polygon(center, params)?;
    let mut points: Vec<Point2> = corners.iter().map(|&c| corner_point(c)).collect();
    let matched: Vec<usize> = (0..corners.len()).collect();
    for &c in &corners {
        let u = (c - center) * (1.0 / c.dist(center));
        for k in 1..=spoke_points {
            let p = c + u * (k as f64 * params.r / 4.0);
            if p.in_unit_square() {
                points.push(p);
            }
        }
    }
    Ok(PlantedNecklace { points, center, corners, matched, params: *params })
}

/// `n` points at radius `r` with a necklace planted at the first lattice
/// center; the remaining points are uniform outside `B(center, R + 2r +
/// spoke length)`, so `find_witness` sees the planted polygon first.
pub fn planted_instance(n: usize, r: f64, spoke_points: usize, seed: u64) -> Result<(PointSet, PlantedNecklace), NecklaceError> {
    let params = necklace_params(n, r)?;
    if params.lattice_spacing > 1.0 {
        return Err(NecklaceError::NoLattice(params.lattice_spacing));
    }
    let center = params.lattice_centers()[0];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let planted = plant_necklace(center, &params, spoke_points, &mut rng)?;
    if planted.points.len() > n {
        return Err(NecklaceError::TooManyPlanted { needed: planted.points.len(), n });
    }
    let keep_out = params.circumradius() + 2.0 * r + spoke_points as f64 * r / 4.0;
    let mut points = planted.points.clone();
    while points.len() < n {
        let p = Point2::new(rng.gen(), rng.gen());
        if p.dist(center) > keep_out {
            points.push(p);
        }
    }
    Ok((PointSet::unit_square(points), planted))
}
