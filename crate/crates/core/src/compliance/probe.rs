//! Vertical ray probes against triangle meshes.

use crate::geom2d::Point2;
use crate::geometry::TriMesh;

/// A mesh with per-triangle plan bounds, for repeated vertical probes.
pub struct Probe<'a> {
    mesh: &'a TriMesh,
    boxes: Vec<[f64; 4]>,
}

impl<'a> Probe<'a> {
    pub fn new(mesh: &'a TriMesh) -> Self {
        let boxes = (0..mesh.triangles.len())
            .map(|t| {
                let v = mesh.triangle(t);
                [
                    v[0].x.min(v[1].x).min(v[2].x),
                    v[0].x.max(v[1].x).max(v[2].x),
                    v[0].y.min(v[1].y).min(v[2].y),
                    v[0].y.max(v[1].y).max(v[2].y),
                ]
            })
            .collect();
        Probe { mesh, boxes }
    }

    /// Elevations where the vertical line through `p` meets the surface.
    pub fn hits(&self, p: Point2) -> Vec<f64> {
        const EPS: f64 = 1e-12;
        let mut out = Vec::new();
        for (t, b) in self.boxes.iter().enumerate() {
            if p.x < b[0] - EPS || p.x > b[1] + EPS || p.y < b[2] - EPS || p.y > b[3] + EPS {
                continue;
            }
            let [a, bv, c] = self.mesh.triangle(t);
            let det = (bv.x - a.x) * (c.y - a.y) - (c.x - a.x) * (bv.y - a.y);
            if det.abs() < 1e-14 {
                continue; // vertical face
            }
            let u = ((p.x - a.x) * (c.y - a.y) - (c.x - a.x) * (p.y - a.y)) / det;
            let v = ((bv.x - a.x) * (p.y - a.y) - (p.x - a.x) * (bv.y - a.y)) / det;
            let tol = 1e-9;
            if u >= -tol && v >= -tol && u + v <= 1.0 + tol {
                out.push(a.z + u * (bv.z - a.z) + v * (c.z - a.z));
            }
        }
        out
    }

    pub fn top(&self, p: Point2) -> Option<f64> {
        self.hits(p).into_iter().reduce(f64::max)
    }

    pub fn bottom(&self, p: Point2) -> Option<f64> {
        self.hits(p).into_iter().reduce(f64::min)
    }

    /// How far from `p` along `dir` the surface continues, found by bisection
    /// between a hit at 0 and a miss at `reach`.
    pub fn extent(&self, p: Point2, dir: Point2, reach: f64) -> f64 {
        if self.top(p).is_none() {
            return 0.0;
        }
        let (mut lo, mut hi) = (0.0, reach);
        if self.top(p.add(dir.scale(hi))).is_some() {
            return reach;
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if self.top(p.add(dir.scale(mid))).is_some() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }
}
