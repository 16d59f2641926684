//! Straightening of grid polylines by line of sight.

use crate::geom2d::Point2;
use crate::grid::{GridMatrix, Plane};

/// True when every point of `a`–`b` falls in a free cell of `plane`.
pub fn line_of_sight(plane: &Plane, grid: &GridMatrix, a: Point2, b: Point2) -> bool {
    let step = grid.resolution / 8.0;
    let n = (a.dist(b) / step).ceil().max(1.0) as usize;
    (0..=n).all(|k| match grid.cell_of(a.lerp(b, k as f64 / n as f64)) {
        Some(c) => !plane.is_blocked(c),
        None => false,
    })
}

/// Greedily joins each kept vertex to the farthest later vertex it can see.
/// Endpoints are kept; the result is never longer than the input.
pub fn pull_string(poly: &[Point2], plane: &Plane, grid: &GridMatrix) -> Vec<Point2> {
    if poly.len() < 3 {
        return poly.to_vec();
    }
    let mut out = vec![poly[0]];
    let mut i = 0;
    while i < poly.len() - 1 {
        let mut j = poly.len() - 1;
        while j > i + 1 && !line_of_sight(plane, grid, poly[i], poly[j]) {
            j -= 1;
        }
        out.push(poly[j]);
        i = j;
    }
    out
}

fn turn(a: Point2, b: Point2, c: Point2) -> f64 {
    let (u, v) = (b.sub(a).normalized(), c.sub(b).normalized());
    u.cross(v).atan2(u.dot(v)).abs()
}

/// Miter overlap of segment `i` (vertices `i`, `i + 1`) for a deck of width `2·half`.
fn fold_excess(poly: &[Point2], i: usize, half: f64) -> f64 {
    let n = poly.len();
    let ta = if i > 0 { (turn(poly[i - 1], poly[i], poly[i + 1]) / 2.0).tan() } else { 0.0 };
    let tb = if i + 2 < n { (turn(poly[i], poly[i + 1], poly[i + 2]) / 2.0).tan() } else { 0.0 };
    half * (ta + tb) - poly[i].dist(poly[i + 1])
}

/// Replaces short segments whose miters would overlap by the corner where
/// their neighbours' extensions meet, when that corner is in free space.
/// Wrapping a convex obstacle in many small steps becomes one sharp turn
/// further from the obstacle.
pub fn consolidate_corners(poly: &[Point2], plane: &Plane, grid: &GridMatrix, half_width: f64) -> Vec<Point2> {
    let mut pts = poly.to_vec();
    'again: loop {
        if pts.len() < 4 {
            return pts;
        }
        for i in 1..pts.len() - 2 {
            if fold_excess(&pts, i, half_width) <= 0.0 {
                continue;
            }
            let (a, b, c, d) = (pts[i - 1], pts[i], pts[i + 1], pts[i + 2]);
            let din = b.sub(a).normalized();
            let dout = d.sub(c).normalized();
            let den = din.cross(dout);
            if den.abs() < 1e-12 {
                continue;
            }
            // b + din·t = c + dout·u
            let w = c.sub(b);
            let t = w.cross(dout) / den;
            let u = w.cross(din) / den;
            if t < 0.0 || u > 0.0 {
                continue;
            }
            let x = b.add(din.scale(t));
            if line_of_sight(plane, grid, a, x) && line_of_sight(plane, grid, x, d) {
                pts.splice(i..i + 2, [x]);
                continue 'again;
            }
        }
        return pts;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Cell;

    #[test]
    fn staircase_collapses_in_open_space() {
        let grid = GridMatrix::empty(10, 10, 1, 1.0, 1.0);
        let plane = grid.free_over(0, 0);
        let stairs: Vec<Point2> = [(0, 0), (3, 0), (3, 1), (6, 1), (6, 2), (9, 2)]
            .iter()
            .map(|&(i, j)| grid.cell_center(Cell::new(i, j)))
            .collect();
        let out = pull_string(&stairs, &plane, &grid);
        assert_eq!(out, vec![stairs[0], stairs[5]]);
    }

    #[test]
    fn keeps_corner_around_obstacle() {
        let mut grid = GridMatrix::empty(6, 6, 1, 1.0, 1.0);
        for j in 0..4 {
            grid.block_column(2, j);
        }
        let plane = grid.free_over(0, 0);
        let pts: Vec<Point2> = [(0, 0), (0, 4), (4, 4), (4, 0)]
            .iter()
            .map(|&(i, j)| grid.cell_center(Cell::new(i, j)))
            .collect();
        let out = pull_string(&pts, &plane, &grid);
        assert_eq!(out.len(), 4);
    }

    #[test]
    fn short_bevel_becomes_one_corner() {
        let grid = GridMatrix::empty(20, 20, 1, 0.5, 1.0);
        let plane = grid.free_over(0, 0);
        let p = |x: f64, y: f64| Point2::new(x, y);
        let poly = vec![p(1.0, 1.0), p(6.0, 1.0), p(6.2, 1.2), p(6.2, 6.0)];
        let out = consolidate_corners(&poly, &plane, &grid, 0.45);
        assert_eq!(out.len(), 3);
        assert!(out[1].dist(p(6.2, 1.0)) < 1e-9);
    }
}
