use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::geom2d::Point2;
use crate::vec3::Vec3;

/// Indexed triangle mesh for one closed solid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriMesh {
    pub name: String,
    pub material: String,
    pub vertices: Vec<Vec3>,
    pub triangles: Vec<[u32; 3]>,
}

impl TriMesh {
    pub fn new(name: impl Into<String>, material: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            material: material.into(),
            vertices: Vec::new(),
            triangles: Vec::new(),
        }
    }

    pub fn push_vertex(&mut self, v: Vec3) -> u32 {
        self.vertices.push(v);
        (self.vertices.len() - 1) as u32
    }

    pub fn push_triangle(&mut self, a: u32, b: u32, c: u32) {
        self.triangles.push([a, b, c]);
    }

    pub fn triangle(&self, t: usize) -> [Vec3; 3] {
        let [a, b, c] = self.triangles[t];
        [
            self.vertices[a as usize],
            self.vertices[b as usize],
            self.vertices[c as usize],
        ]
    }

    /// Divergence-theorem volume; positive for outward winding.
    pub fn signed_volume(&self) -> f64 {
        (0..self.triangles.len())
            .map(|t| {
                let [a, b, c] = self.triangle(t);
                a.dot(b.cross(c)) / 6.0
            })
            .sum()
    }

    pub fn surface_area(&self) -> f64 {
        (0..self.triangles.len())
            .map(|t| {
                let [a, b, c] = self.triangle(t);
                (b - a).cross(c - a).norm() * 0.5
            })
            .sum()
    }

    /// Every directed edge appears once and its reverse appears once.
    pub fn is_watertight(&self) -> bool {
        if self.triangles.is_empty() {
            return false;
        }
        let mut directed: HashMap<(u32, u32), u32> = HashMap::new();
        for t in &self.triangles {
            for k in 0..3 {
                *directed.entry((t[k], t[(k + 1) % 3])).or_default() += 1;
            }
        }
        directed
            .iter()
            .all(|(&(a, b), &n)| n == 1 && directed.get(&(b, a)) == Some(&1))
    }

    pub fn indices_in_range(&self) -> bool {
        let n = self.vertices.len() as u32;
        self.triangles.iter().all(|t| t.iter().all(|&i| i < n))
    }

    pub fn has_degenerate_triangle(&self) -> bool {
        (0..self.triangles.len()).any(|t| {
            let [a, b, c] = self.triangle(t);
            (b - a).cross(c - a).norm() < 1e-12
        })
    }

    /// V - E + F over the vertices actually referenced.
    pub fn euler_characteristic(&self) -> i64 {
        let mut verts = HashSet::new();
        let mut edges = HashSet::new();
        for t in &self.triangles {
            for k in 0..3 {
                verts.insert(t[k]);
                let (a, b) = (t[k], t[(k + 1) % 3]);
                edges.insert((a.min(b), a.max(b)));
            }
        }
        verts.len() as i64 - edges.len() as i64 + self.triangles.len() as i64
    }

    pub fn bounds(&self) -> (Vec3, Vec3) {
        let mut lo = Vec3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY);
        let mut hi = Vec3::new(f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            lo = Vec3::new(lo.x.min(v.x), lo.y.min(v.y), lo.z.min(v.z));
            hi = Vec3::new(hi.x.max(v.x), hi.y.max(v.y), hi.z.max(v.z));
        }
        (lo, hi)
    }
}

/// Closed four-sided prism with a quadrilateral plan footprint (counter-
/// clockwise) and independent bottom/top heights at each corner.
pub fn quad_prism(
    name: impl Into<String>,
    material: impl Into<String>,
    corners: [Point2; 4],
    bottom: [f64; 4],
    top: [f64; 4],
) -> TriMesh {
    let mut m = TriMesh::new(name, material);
    for (k, c) in corners.iter().enumerate() {
        m.push_vertex(Vec3::new(c.x, c.y, bottom[k]));
    }
    for (k, c) in corners.iter().enumerate() {
        m.push_vertex(Vec3::new(c.x, c.y, top[k]));
    }
    // bottom (facing down), top (facing up), then four sides
    m.push_triangle(0, 2, 1);
    m.push_triangle(0, 3, 2);
    m.push_triangle(4, 5, 6);
    m.push_triangle(4, 6, 7);
    for k in 0..4u32 {
        let k1 = (k + 1) % 4;
        m.push_triangle(k, k1, 4 + k1);
        m.push_triangle(k, 4 + k1, 4 + k);
    }
    m
}

/// Footprint corners of a rectangle centred on `centre` with its first axis
/// along `dir`, counter-clockwise.
pub fn rect_corners(centre: Point2, dir: Point2, half_len: f64, half_wid: f64) -> [Point2; 4] {
    let d = dir.normalized();
    let n = d.perp();
    [
        centre.sub(d.scale(half_len)).sub(n.scale(half_wid)),
        centre.add(d.scale(half_len)).sub(n.scale(half_wid)),
        centre.add(d.scale(half_len)).add(n.scale(half_wid)),
        centre.sub(d.scale(half_len)).add(n.scale(half_wid)),
    ]
}

/// Upright box whose plan footprint is a rectangle centred on `centre` with
/// its first axis along `dir`.
#[allow(clippy::too_many_arguments)]
pub fn oriented_box(
    name: impl Into<String>,
    material: impl Into<String>,
    centre: Point2,
    dir: Point2,
    half_len: f64,
    half_wid: f64,
    z0: f64,
    z1: f64,
) -> TriMesh {
    let corners = rect_corners(centre, dir, half_len, half_wid);
    quad_prism(name, material, corners, [z0; 4], [z1; 4])
}

/// Axis-aligned box; eight vertices, twelve triangles.
pub fn axis_box(name: impl Into<String>, material: impl Into<String>, lo: Vec3, hi: Vec3) -> TriMesh {
    let c = Point2::new((lo.x + hi.x) * 0.5, (lo.y + hi.y) * 0.5);
    oriented_box(
        name,
        material,
        c,
        Point2::new(1.0, 0.0),
        (hi.x - lo.x) * 0.5,
        (hi.y - lo.y) * 0.5,
        lo.z,
        hi.z,
    )
}

fn tri_bounds(t: &[Vec3; 3]) -> (Vec3, Vec3) {
    let lo = Vec3::new(
        t[0].x.min(t[1].x).min(t[2].x),
        t[0].y.min(t[1].y).min(t[2].y),
        t[0].z.min(t[1].z).min(t[2].z),
    );
    let hi = Vec3::new(
        t[0].x.max(t[1].x).max(t[2].x),
        t[0].y.max(t[1].y).max(t[2].y),
        t[0].z.max(t[1].z).max(t[2].z),
    );
    (lo, hi)
}

/// Does segment `p→q` cross the interior of triangle `t`? Contacts within
/// `tol` (touching, grazing, coplanar) do not count.
fn segment_pierces(p: Vec3, q: Vec3, t: &[Vec3; 3], tol: f64) -> bool {
    let n = (t[1] - t[0]).cross(t[2] - t[0]);
    let nn = n.norm();
    if nn < 1e-15 {
        return false;
    }
    let n = n * (1.0 / nn);
    let dp = (p - t[0]).dot(n);
    let dq = (q - t[0]).dot(n);
    if !((dp > tol && dq < -tol) || (dp < -tol && dq > tol)) {
        return false;
    }
    let x = p + (q - p) * (dp / (dp - dq));
    // inside test with the edges pulled in by tol
    for k in 0..3 {
        let a = t[k];
        let b = t[(k + 1) % 3];
        let e = b - a;
        let inward = n.cross(e).normalized();
        if (x - a).dot(inward) <= tol {
            return false;
        }
    }
    true
}

/// Proper (penetrating) intersection between two triangles.
pub fn triangles_intersect(a: &[Vec3; 3], b: &[Vec3; 3], tol: f64) -> bool {
    (0..3).any(|k| segment_pierces(a[k], a[(k + 1) % 3], b, tol))
        || (0..3).any(|k| segment_pierces(b[k], b[(k + 1) % 3], a, tol))
}

/// True when some triangle of `a` penetrates some triangle of `b`.
pub fn meshes_intersect(a: &TriMesh, b: &TriMesh, tol: f64) -> bool {
    let (alo, ahi) = a.bounds();
    let (blo, bhi) = b.bounds();
    if alo.x > bhi.x + tol || blo.x > ahi.x + tol || alo.y > bhi.y + tol || blo.y > ahi.y + tol || alo.z > bhi.z + tol || blo.z > ahi.z + tol {
        return false;
    }
    let bt: Vec<([Vec3; 3], (Vec3, Vec3))> = (0..b.triangles.len())
        .map(|t| {
            let tri = b.triangle(t);
            (tri, tri_bounds(&tri))
        })
        .collect();
    for ta in 0..a.triangles.len() {
        let tri = a.triangle(ta);
        let (lo, hi) = tri_bounds(&tri);
        for (tb, (blo, bhi)) in &bt {
            if lo.x > bhi.x || blo.x > hi.x || lo.y > bhi.y || blo.y > hi.y || lo.z > bhi.z || blo.z > hi.z {
                continue;
            }
            if triangles_intersect(&tri, tb, tol) {
                return true;
            }
        }
    }
    false
}
