//! Four concentric rings of 360 vertices each in the annulus between radii
//! 55 and 57, connectivity radius 1. Angles are in degrees.
//!
//! | ring | radius                     | angle   |
//! |------|----------------------------|---------|
//! | A    | 55                         | θ       |
//! | C    | 55.5 (θ even), 55.85 (odd) | θ       |
//! | D    | 56 (θ even), 56.35 (odd)   | θ + ½   |
//! | B    | 57                         | θ + ½   |
//!
//! The result is 3-regular with girth 5, so at least three cops are needed.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geograph::{build_graph, degree_girth_lower_bound, graph_metrics, GeometricGraph, GraphMetrics, PointSet};
use crate::geometry::polar_deg;
use crate::solver::dismantle;

pub const ANNULAR_N: usize = 1440;

#[derive(Debug, Error)]
#[error("annular construction self-check failed: {0}")]
pub struct SelfCheckError(String);

fn points() -> Vec<(char, f64, f64)> {
    let mut v = Vec::with_capacity(ANNULAR_N);
    for t in 0..360 {
        let th = t as f64;
        let even = t % 2 == 0;
        v.push(('A', 55.0, th));
        v.push(('B', 57.0, th + 0.5));
        v.push(('C', if even { 55.5 } else { 55.85 }, th));
        v.push(('D', if even { 56.0 } else { 56.35 }, th + 0.5));
    }
    v
}

/// Builds the graph and checks it is 3-regular with girth 5 and no edge
/// longer than `1 + 1e-9`.
pub fn annular_graph() -> Result<GeometricGraph, SelfCheckError> {
    let pts = points().into_iter().map(|(_, r, t)| polar_deg(r, t)).collect();
    let g = build_graph(PointSet::new(pts), 1.0).map_err(|e| SelfCheckError(e.to_string()))?;
    if g.n() != ANNULAR_N {
        return Err(SelfCheckError(format!("{} vertices", g.n())));
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) != 3) {
        return Err(SelfCheckError(format!("vertex {v} has degree {}", g.degree(v))));
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| g.point(u).dist(g.point(v)) > 1.0 + 1e-9) {
        return Err(SelfCheckError(format!("edge {u}-{v} too long")));
    }
    let m = graph_metrics(&g);
    if m.girth.finite() != Some(5) {
        return Err(SelfCheckError(format!("girth {:?}", m.girth)));
    }
    Ok(g)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnnularReport {
    pub n: usize,
    pub edges: usize,
    pub metrics: GraphMetrics,
    pub lower_bound: usize,
    pub outer_edge: f64,
    pub inner_edge: f64,
    pub copwin: bool,
}

pub fn annular_report(g: &GeometricGraph) -> AnnularReport {
    // A-vertices sit at indices 4θ, B-vertices at 4θ + 1.
    let inner = g.point(0).dist(g.point(4));
    let outer = g.point(1).dist(g.point(5));
    AnnularReport {
        n: g.n(),
        edges: g.edge_count(),
        metrics: graph_metrics(g),
        lower_bound: degree_girth_lower_bound(g),
        outer_edge: outer,
        inner_edge: inner,
        copwin: dismantle(g).copwin,
    }
}
