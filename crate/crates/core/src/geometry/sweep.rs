//! Mitred sweep of a closed cross-section along a 3D centre-line.

use super::mesh::TriMesh;
use super::GeomError;
use crate::geom2d::Point2;
use crate::vec3::Vec3;

/// Centre-line with consecutive coincident plan points removed.
pub fn clean_centreline(points: &[Vec3]) -> Vec<Vec3> {
    let mut out: Vec<Vec3> = Vec::with_capacity(points.len());
    for p in points {
        match out.last() {
            Some(q) if Point2::new(q.x, q.y).dist(Point2::new(p.x, p.y)) < 1e-9 => {}
            _ => out.push(*p),
        }
    }
    out
}

/// Left-pointing lateral vector at each station, scaled so that a profile
/// offset of `a` lands on the offset line of both adjacent segments.
pub fn miter_vectors(points: &[Vec3]) -> Vec<Point2> {
    let n = points.len();
    let dirs: Vec<Point2> = points
        .windows(2)
        .map(|w| Point2::new(w[1].x - w[0].x, w[1].y - w[0].y).normalized())
        .collect();
    (0..n)
        .map(|i| {
            if i == 0 {
                dirs[0].perp()
            } else if i == n - 1 {
                dirs[n - 2].perp()
            } else {
                let (a, b) = (dirs[i - 1].perp(), dirs[i].perp());
                let s = a.add(b);
                s.scale(1.0 / (1.0 + a.dot(b)))
            }
        })
        .collect()
}

/// Sweep `profile`, given counter-clockwise in (lateral-left, up) coordinates,
/// along `points`. Start and end are capped.
pub fn sweep(
    name: &str,
    material: &str,
    points: &[Vec3],
    profile: &[(f64, f64)],
) -> Result<TriMesh, GeomError> {
    let pts = clean_centreline(points);
    if pts.len() < 2 {
        return Err(GeomError::DegeneratePath);
    }
    let miters = miter_vectors(&pts);
    let m = profile.len() as u32;
    let mut mesh = TriMesh::new(name, material);
    for (p, mv) in pts.iter().zip(&miters) {
        for &(a, b) in profile {
            mesh.push_vertex(Vec3::new(p.x + a * mv.x, p.y + a * mv.y, p.z + b));
        }
    }
    for i in 0..pts.len() as u32 - 1 {
        let (r0, r1) = (i * m, (i + 1) * m);
        for k in 0..m {
            let k1 = (k + 1) % m;
            mesh.push_triangle(r0 + k, r0 + k1, r1 + k1);
            mesh.push_triangle(r0 + k, r1 + k1, r1 + k);
        }
    }
    let last = (pts.len() as u32 - 1) * m;
    for k in 1..m - 1 {
        mesh.push_triangle(0, k + 1, k);
        mesh.push_triangle(last, last + k, last + k + 1);
    }
    Ok(mesh)
}

/// Regular polygon of `sides` around `(cu, cv)`, counter-clockwise.
pub fn polygon_profile(cu: f64, cv: f64, radius: f64, sides: usize) -> Vec<(f64, f64)> {
    (0..sides)
        .map(|k| {
            let a = std::f64::consts::TAU * k as f64 / sides as f64;
            (cu + radius * a.cos(), cv + radius * a.sin())
        })
        .collect()
}

/// Axis-aligned square of side `side` around `(cu, cv)`, counter-clockwise.
pub fn square_profile(cu: f64, cv: f64, side: f64) -> Vec<(f64, f64)> {
    let h = side / 2.0;
    vec![(cu - h, cv - h), (cu + h, cv - h), (cu + h, cv + h), (cu - h, cv + h)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn straight_rectangle_is_a_box() {
        let pts = [Vec3::new(0.0, 0.0, 0.0), Vec3::new(5.0, 0.0, 0.0)];
        let prof = [(-0.5, -0.15), (0.5, -0.15), (0.5, 0.0), (-0.5, 0.0)];
        let m = sweep("deck", "concrete", &pts, &prof).unwrap();
        assert_eq!(m.vertices.len(), 8);
        assert_eq!(m.triangles.len(), 12);
        assert!(m.is_watertight());
        assert!((m.signed_volume() - 0.75).abs() < 1e-12);
        assert_eq!(m.euler_characteristic(), 2);
    }

    #[test]
    fn polygon_sweep_is_closed() {
        let pts = [
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(3.0, 0.0, 0.25),
            Vec3::new(3.0, 4.0, 0.25),
        ];
        let m = sweep("rail", "steel", &pts, &polygon_profile(0.4, 0.9, 0.02, 16)).unwrap();
        assert!(m.is_watertight());
        assert!(m.signed_volume() > 0.0);
        assert_eq!(m.euler_characteristic(), 2);
    }

    #[test]
    fn single_point_is_degenerate() {
        let pts = [Vec3::new(0.0, 0.0, 0.0), Vec3::new(0.0, 0.0, 1.0)];
        assert_eq!(
            sweep("x", "y", &pts, &square_profile(0.0, 0.0, 1.0)),
            Err(GeomError::DegeneratePath)
        );
    }
}
