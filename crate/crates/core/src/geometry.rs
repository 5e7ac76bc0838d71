//! Planar primitives: points, closed segments, circle intersections and the
//! lens region `B(p1, r) ∩ B(p2, r)` used by the dismantling analysis.
//!
//! All predicates work in `f64` with an absolute tolerance (default
//! [`EPS`]). Ties at distance exactly `r` have measure zero for random
//! inputs, so no exact arithmetic is attempted.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default absolute tolerance for geometric predicates.
pub const EPS: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("degenerate configuration: d = {d} must exceed r = {r}")]
    Degenerate { d: f64, r: f64 },
    #[error("domain error: lens area needs 0 < r <= d (got d = {d}, r = {r})")]
    Domain { d: f64, r: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the planar cross product.
    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn dist(self, o: Point2) -> f64 {
        dist(self, o)
    }

    pub fn dist_sq(self, o: Point2) -> f64 {
        let dx = self.x - o.x;
        let dy = self.y - o.y;
        dx * dx + dy * dy
    }

    pub fn midpoint(self, o: Point2) -> Point2 {
        Point2::new(0.5 * (self.x + o.x), 0.5 * (self.y + o.y))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn in_unit_square(self) -> bool {
        (0.0..=1.0).contains(&self.x) && (0.0..=1.0).contains(&self.y)
    }

    /// Swaps the coordinates (reflection across the diagonal `x = y`).
    pub fn transposed(self) -> Point2 {
        Point2::new(self.y, self.x)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }
}

/// Closed segment `[a, b]`; `a == b` is a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point2,
    pub b: Point2,
}

impl Segment {
    pub const fn new(a: Point2, b: Point2) -> Self {
        Self { a, b }
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }

    /// Euclidean distance from `p` to the closed segment.
    pub fn distance_to(&self, p: Point2) -> f64 {
        let ab = self.b - self.a;
        let len_sq = ab.dot(ab);
        if len_sq == 0.0 {
            return p.dist(self.a);
        }
        let t = ((p - self.a).dot(ab) / len_sq).clamp(0.0, 1.0);
        p.dist(self.a + ab * t)
    }
}

pub fn dist(p: Point2, q: Point2) -> f64 {
    (p.x - q.x).hypot(p.y - q.y)
}

/// Orientation of `c` relative to the directed line `a -> b`, scaled by the
/// lengths involved so the tolerance is absolute in distance units.
fn orient(a: Point2, b: Point2, c: Point2, tol: f64) -> i8 {
    let ab = b - a;
    let ac = c - a;
    let len = ab.norm();
    let cross = ab.cross(ac);
    // Signed distance of c from the line through a,b (or from a if degenerate).
    let signed = if len > 0.0 { cross / len } else { 0.0 };
    if signed > tol {
        1
    } else if signed < -tol {
        -1
    } else {
        0
    }
}

/// True iff the closed segments share a point (endpoint contact and
/// collinear overlap included), up to the absolute tolerance `tol`.
pub fn segments_intersect_tol(s1: &Segment, s2: &Segment, tol: f64) -> bool {
    // Degenerate segments reduce to point-segment distance tests.
    if s1.length() <= tol {
        return s2.distance_to(s1.a) <= tol;
    }
    if s2.length() <= tol {
        return s1.distance_to(s2.a) <= tol;
    }
    let o1 = orient(s1.a, s1.b, s2.a, tol);
    let o2 = orient(s1.a, s1.b, s2.b, tol);
    let o3 = orient(s2.a, s2.b, s1.a, tol);
    let o4 = orient(s2.a, s2.b, s1.b, tol);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    // Touching or collinear: some endpoint lies on the other segment.
    s1.distance_to(s2.a) <= tol
        || s1.distance_to(s2.b) <= tol
        || s2.distance_to(s1.a) <= tol
        || s2.distance_to(s1.b) <= tol
}

pub fn segments_intersect(s1: &Segment, s2: &Segment) -> bool {
    segments_intersect_tol(s1, s2, EPS)
}

/// Intersection points of `∂B(x, r)` and `∂B(y, ‖x − y‖)`.
///
/// The point on the positive (left) side of the directed line `x -> y` is
/// returned first.
pub fn lens_points(x: Point2, y: Point2, r: f64) -> Result<(Point2, Point2), GeometryError> {
    let d = x.dist(y);
    if d <= r || d == 0.0 {
        return Err(GeometryError::Degenerate { d, r });
    }
    // Both circles pass through points at distance s from x along x->y.
    let s = r * r / (2.0 * d);
    let h = (r * r - s * s).max(0.0).sqrt();
    let u = (y - x) * (1.0 / d);
    let normal = Point2::new(-u.y, u.x);
    let foot = x + u * s;
    Ok((foot + normal * h, foot - normal * h))
}

/// The region `W'(x, y; r) = B(p1, r) ∩ B(p2, r)` where `p1, p2` are the
/// intersection points of `∂B(x, r)` and `∂B(y, d)`, `d = ‖x − y‖ > r`.
///
/// For `d > r` this is exactly the set of centers `z` whose radius-`r` ball
/// covers `B(x, r) ∩ B(y, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LensRegion {
    pub x: Point2,
    pub y: Point2,
    pub r: f64,
    pub p1: Point2,
    pub p2: Point2,
    pub area: f64,
}

impl LensRegion {
    pub fn new(x: Point2, y: Point2, r: f64) -> Result<Self, GeometryError> {
        let (p1, p2) = lens_points(x, y, r)?;
        let area = lens_area(x.dist(y), r)?;
        Ok(Self { x, y, r, p1, p2, area })
    }

    pub fn contains(&self, z: Point2) -> bool {
        lens_contains(self, z)
    }

    /// Axis-aligned bounding box `(min, max)` of the lens.
    pub fn bounding_box(&self) -> (Point2, Point2) {
        let d = self.x.dist(self.y);
        let s = self.r * self.r / (2.0 * d);
        let h = (self.r * self.r - s * s).max(0.0).sqrt();
        let mid = self.p1.midpoint(self.p2);
        // Half-extent is r - h along p1p2 and s across it.
        let along = (self.p1 - self.p2) * (1.0 / (2.0 * h).max(f64::MIN_POSITIVE));
        let across = Point2::new(-along.y, along.x);
        let ha = self.r - h;
        let corners = [
            mid + along * ha + across * s,
            mid + along * ha - across * s,
            mid - along * ha + across * s,
            mid - along * ha - across * s,
        ];
        let mut lo = corners[0];
        let mut hi = corners[0];
        for c in &corners[1..] {
            lo = Point2::new(lo.x.min(c.x), lo.y.min(c.y));
            hi = Point2::new(hi.x.max(c.x), hi.y.max(c.y));
        }
        (lo, hi)
    }
}

pub fn lens_contains(lens: &LensRegion, z: Point2) -> bool {
    z.dist(lens.p1) <= lens.r + EPS && z.dist(lens.p2) <= lens.r + EPS
}

/// `x − sin x`, accurate for small `x` where direct evaluation cancels.
fn x_minus_sin(x: f64) -> f64 {
    if x.abs() < 1e-2 {
        let x2 = x * x;
        x * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0))
    } else {
        x - x.sin()
    }
}

/// Area of the lens region for centers at distance `d` and radius `r`:
/// `r² (2α − sin 2α)` with `sin α = s / r`, `s = r² / 2d`.
///
/// Nonincreasing in `d` for fixed `r`. The closure point `d = r` is accepted
/// (the formula is continuous there); `d < r` is a domain error.
pub fn lens_area(d: f64, r: f64) -> Result<f64, GeometryError> {
    if !(r > 0.0) || !(d >= r) || !d.is_finite() {
        return Err(GeometryError::Domain { d, r });
    }
    let s = (r * r / (2.0 * d)).clamp(0.0, r);
    let alpha = (s / r).asin();
    Ok(r * r * x_minus_sin(2.0 * alpha))
}

/// Nearest point of `[0, 1]²` to `y` (coordinate-wise clamp).
pub fn clamp_to_square(y: Point2) -> Point2 {
    Point2::new(y.x.clamp(0.0, 1.0), y.y.clamp(0.0, 1.0))
}

/// Polar coordinates with the angle in degrees.
pub fn polar_deg(radius: f64, theta_deg: f64) -> Point2 {
    let t = theta_deg * PI / 180.0;
    Point2::new(radius * t.cos(), radius * t.sin())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    fn seg(a: (f64, f64), b: (f64, f64)) -> Segment {
        Segment::new(p(a.0, a.1), p(b.0, b.1))
    }

    #[test]
    fn distances() {
        assert_eq!(dist(p(0.0, 0.0), p(3.0, 4.0)), 5.0);
        assert_eq!(dist(p(0.5, 0.5), p(0.5, 0.5)), 0.0);
        assert!((dist(p(0.0, 0.0), p(1.0, 1.0)) - 1.41421356).abs() < 1e-8);
    }

    #[test]
    fn segment_cases() {
        assert!(segments_intersect(&seg((0., 0.), (1., 1.)), &seg((0., 1.), (1., 0.))));
        assert!(!segments_intersect(&seg((0., 0.), (1., 0.)), &seg((0., 1.), (1., 1.))));
        assert!(segments_intersect(&seg((0., 0.), (1., 0.)), &seg((1., 0.), (2., 0.))));
        // collinear overlap and collinear disjoint
        assert!(segments_intersect(&seg((0., 0.), (2., 0.)), &seg((1., 0.), (3., 0.))));
        assert!(!segments_intersect(&seg((0., 0.), (1., 0.)), &seg((1.5, 0.), (3., 0.))));
        // degenerate point on / off a segment
        assert!(segments_intersect(&seg((0.5, 0.), (0.5, 0.)), &seg((0., 0.), (1., 0.))));
        assert!(!segments_intersect(&seg((0.5, 0.1), (0.5, 0.1)), &seg((0., 0.), (1., 0.))));
        // T-junction
        assert!(segments_intersect(&seg((0.5, 0.), (0.5, 1.)), &seg((0., 0.), (1., 0.))));
    }

    #[test]
    fn lens_points_golden() {
        let (a, b) = lens_points(p(0., 0.), p(2., 0.), 1.0).unwrap();
        assert!((a.x - 0.25).abs() < 1e-12 && (a.y - 0.968245836551854).abs() < 1e-12);
        assert!((b.x - 0.25).abs() < 1e-12 && (b.y + 0.968245836551854).abs() < 1e-12);
        // rotated by 90 degrees: positive side of x->y is now -x
        let (a, b) = lens_points(p(0., 0.), p(0., 2.), 1.0).unwrap();
        assert!((a.x + 0.968245836551854).abs() < 1e-12 && (a.y - 0.25).abs() < 1e-12);
        assert!((b.x - 0.968245836551854).abs() < 1e-12 && (b.y - 0.25).abs() < 1e-12);
        assert!(lens_points(p(0., 0.), p(1., 0.), 1.0).is_err());
        assert!(lens_points(p(0., 0.), p(0., 0.), 1.0).is_err());
    }

    #[test]
    fn lens_points_lie_on_both_circles() {
        let x = p(0.3, -0.2);
        let y = p(1.7, 0.9);
        let r = 0.8;
        let d = x.dist(y);
        let (a, b) = lens_points(x, y, r).unwrap();
        for q in [a, b] {
            assert!((q.dist(x) - r).abs() < 1e-12);
            assert!((q.dist(y) - d).abs() < 1e-12);
        }
        assert!((y - x).cross(a - x) > 0.0);
    }

    #[test]
    fn lens_membership_cases() {
        let x = p(0., 0.);
        let y = p(2., 0.);
        let lens = LensRegion::new(x, y, 1.0).unwrap();
        assert!(lens.contains(x));
        assert!(lens.contains(lens.p1.midpoint(lens.p2)));
        assert!(!lens.contains(y));
    }

    #[test]
    fn lens_area_values() {
        let a = lens_area(1.0, 1.0).unwrap();
        assert!((a - (PI / 3.0 - 3f64.sqrt() / 2.0)).abs() < 1e-12);
        assert!(lens_area(1e9, 1.0).unwrap() < 1e-20);
        assert!(lens_area(0.5, 1.0).is_err());
        assert!(lens_area(1.0, 0.0).is_err());
        // series branch agrees with direct evaluation where both are accurate
        let x = 0.0099;
        assert!((x_minus_sin(x) - (x - x.sin())).abs() < 1e-15);
    }

    #[test]
    fn bounding_box_contains_lens() {
        let lens = LensRegion::new(p(0., 0.), p(1.3, 0.4), 1.0).unwrap();
        let (lo, hi) = lens.bounding_box();
        for q in [lens.x, lens.p1.midpoint(lens.p2)] {
            assert!(q.x >= lo.x - 1e-12 && q.x <= hi.x + 1e-12);
            assert!(q.y >= lo.y - 1e-12 && q.y <= hi.y + 1e-12);
        }
    }

    #[test]
    fn clamp_and_polar() {
        assert_eq!(clamp_to_square(p(0.5, 0.5)), p(0.5, 0.5));
        assert_eq!(clamp_to_square(p(1.3, 0.4)), p(1.0, 0.4));
        assert_eq!(clamp_to_square(p(-0.2, 1.7)), p(0.0, 1.0));
        let q = polar_deg(55.0, 0.0);
        assert_eq!(q, p(55.0, 0.0));
        let q = polar_deg(57.0, 90.0);
        assert!(q.x.abs() < 1e-12 && (q.y - 57.0).abs() < 1e-12);
        let q = polar_deg(55.0, 1.0);
        assert!((q.x - 54.99162323360152).abs() < 1e-9 && (q.y - 0.9598823540505932).abs() < 1e-9);
    }
}
