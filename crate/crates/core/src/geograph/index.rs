use crate::geometry::Point2;

/// Cap on the number of grid cells per axis; larger extents widen the cells.
const MAX_CELLS_PER_AXIS: usize = 2048;

/// Uniform bucket grid over a point set.
///
/// Cells are at least `cell` wide, so every point within distance `cell` of
/// a query lies in the 3×3 block around the query's cell.
#[derive(Debug, Clone)]
pub struct GridIndex {
    origin: Point2,
    cell: f64,
    cols: usize,
    rows: usize,
    // CSR layout: cell c holds entries[starts[c]..starts[c + 1]].
    starts: Vec<usize>,
    entries: Vec<usize>,
}

impl GridIndex {
    pub fn new(points: &[Point2], min_cell: f64) -> Self {
        assert!(min_cell > 0.0, "grid cell size must be positive");
        let (lo, hi) = bounds(points);
        let extent = (hi.x - lo.x).max(hi.y - lo.y).max(0.0);
        // Keep the cell count O(n) so sparse inputs with tiny radii stay cheap.
        let per_axis = ((4 * points.len() + 16) as f64).sqrt().ceil().min(MAX_CELLS_PER_AXIS as f64);
        let cell = min_cell.max(extent / per_axis);
        let cols = ((hi.x - lo.x) / cell).floor() as usize + 1;
        let rows = ((hi.y - lo.y) / cell).floor() as usize + 1;

        let mut counts = vec![0usize; cols * rows + 1];
        let cell_of: Vec<usize> = points
            .iter()
            .map(|&p| {
                let (cx, cy) = Self::coords(lo, cell, cols, rows, p);
                cy * cols + cx
            })
            .collect();
        for &c in &cell_of {
            counts[c + 1] += 1;
        }
        for i in 1..counts.len() {
            counts[i] += counts[i - 1];
        }
        let starts = counts.clone();
        let mut fill = counts;
        let mut entries = vec![0usize; points.len()];
        for (i, &c) in cell_of.iter().enumerate() {
            entries[fill[c]] = i;
            fill[c] += 1;
        }
        Self { origin: lo, cell, cols, rows, starts, entries }
    }

    fn coords(origin: Point2, cell: f64, cols: usize, rows: usize, p: Point2) -> (usize, usize) {
        let cx = ((p.x - origin.x) / cell).floor().max(0.0) as usize;
        let cy = ((p.y - origin.y) / cell).floor().max(0.0) as usize;
        (cx.min(cols - 1), cy.min(rows - 1))
    }

    pub fn cell_size(&self) -> f64 {
        self.cell
    }

    fn cell_entries(&self, cx: usize, cy: usize) -> &[usize] {
        let c = cy * self.cols + cx;
        &self.entries[self.starts[c]..self.starts[c + 1]]
    }

    /// Indices in the cells overlapping the square of half-width `radius`
    /// around `q`. A superset of the points within `radius` of `q`.
    pub fn candidates(&self, q: Point2, radius: f64, mut f: impl FnMut(usize)) {
        if self.entries.is_empty() {
            return;
        }
        let span = |v: f64, o: f64, max: usize| -> Option<(usize, usize)> {
            let lo = ((v - radius - o) / self.cell).floor();
            let hi = ((v + radius - o) / self.cell).floor();
            if hi < 0.0 || lo > (max - 1) as f64 {
                return None;
            }
            Some((lo.max(0.0) as usize, (hi as usize).min(max - 1)))
        };
        let Some((x0, x1)) = span(q.x, self.origin.x, self.cols) else { return };
        let Some((y0, y1)) = span(q.y, self.origin.y, self.rows) else { return };
        for cy in y0..=y1 {
            for cx in x0..=x1 {
                for &i in self.cell_entries(cx, cy) {
                    f(i);
                }
            }
        }
    }

    /// Indices of points within `radius` of `q` (closed ball, inflated by `tol`).
    pub fn within(&self, points: &[Point2], q: Point2, radius: f64, tol: f64) -> Vec<usize> {
        let mut out = Vec::new();
        let lim = radius + tol;
        self.candidates(q, lim, |i| {
            if points[i].dist_sq(q) <= lim * lim {
                out.push(i);
            }
        });
        out.sort_unstable();
        out
    }
}

fn bounds(points: &[Point2]) -> (Point2, Point2) {
    if points.is_empty() {
        return (Point2::new(0.0, 0.0), Point2::new(1.0, 1.0));
    }
    let mut lo = points[0];
    let mut hi = points[0];
    for p in points {
        lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn within_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pts: Vec<Point2> = (0..500).map(|_| Point2::new(rng.gen(), rng.gen())).collect();
        let idx = GridIndex::new(&pts, 0.07);
        for _ in 0..200 {
            let q = Point2::new(rng.gen_range(-0.2..1.2), rng.gen_range(-0.2..1.2));
            let rad = rng.gen_range(0.0..0.3);
            let got = idx.within(&pts, q, rad, 0.0);
            let want: Vec<usize> =
                (0..pts.len()).filter(|&i| pts[i].dist_sq(q) <= rad * rad).collect();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn empty_and_tiny_cells() {
        let idx = GridIndex::new(&[], 0.1);
        assert!(idx.within(&[], Point2::new(0.5, 0.5), 1.0, 0.0).is_empty());
        // Huge extent with tiny requested cell gets clamped to the axis cap.
        let pts = vec![Point2::new(0.0, 0.0), Point2::new(1e6, 0.0)];
        let idx = GridIndex::new(&pts, 1e-6);
        assert!(idx.cell_size() >= 1e6 / MAX_CELLS_PER_AXIS as f64);
        assert_eq!(idx.within(&pts, Point2::new(1e6, 0.0), 1.0, 0.0), vec![1]);
    }
}
