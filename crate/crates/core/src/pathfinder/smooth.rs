//! Post-processing of a validated centre-line.

use std::f64::consts::PI;

use super::path::{arc_positions, sample_at, RampPath, SegmentKind, Station};
use crate::geom2d::Point2;
use crate::params::PathType;

/// Longest chord used to approximate a fillet arc.
pub const MAX_CHORD: f64 = 0.1;

/// Fillet radius for curved paths.
pub fn fillet_radius(inter_path_distance: f64, deck_width: f64) -> f64 {
    (inter_path_distance / 2.0).min(3.0 * deck_width)
}

/// Drop interior stations sitting on a straight, same-kind, constant-grade run.
pub fn remove_collinear(path: &RampPath) -> RampPath {
    let mut st: Vec<Station> = Vec::with_capacity(path.stations.len());
    for s in &path.stations {
        while st.len() >= 2 {
            let a = st[st.len() - 2];
            let b = st[st.len() - 1];
            if b.kind == s.kind && collinear3(a, b, *s) {
                st.pop();
            } else {
                break;
            }
        }
        st.push(*s);
    }
    RampPath::from_stations(st, path.slope_used, path.layered, path.route)
}

fn collinear3(a: Station, b: Station, c: Station) -> bool {
    let d0 = [b.x - a.x, b.y - a.y, b.z - a.z];
    let d1 = [c.x - b.x, c.y - b.y, c.z - b.z];
    let cross = [
        d0[1] * d1[2] - d0[2] * d1[1],
        d0[2] * d1[0] - d0[0] * d1[2],
        d0[0] * d1[1] - d0[1] * d1[0],
    ];
    let n0 = (d0[0] * d0[0] + d0[1] * d0[1] + d0[2] * d0[2]).sqrt();
    let n1 = (d1[0] * d1[0] + d1[1] * d1[1] + d1[2] * d1[2]).sqrt();
    let cn = (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt();
    let dot = d0[0] * d1[0] + d0[1] * d1[1] + d0[2] * d1[2];
    cn <= 1e-9 * n0 * n1 && dot > 0.0
}

/// Straight: collinear stations removed. Curve: every corner that `accept`
/// still approves after filleting is replaced by a sampled arc; the others
/// keep their sharp corner.
pub fn smooth_path(
    path: &RampPath,
    path_type: PathType,
    radius: f64,
    accept: impl Fn(&RampPath) -> bool,
) -> RampPath {
    let base = remove_collinear(path);
    if path_type == PathType::Straight || radius <= 0.0 {
        return base;
    }
    let mut current = base.clone();
    // last corner first so earlier indices stay valid
    for i in (1..base.stations.len().saturating_sub(1)).rev() {
        if let Some(candidate) = fillet(&current, i, radius) {
            if accept(&candidate) {
                current = candidate;
            }
        }
    }
    current
}

fn fillet(path: &RampPath, i: usize, radius: f64) -> Option<RampPath> {
    let st = &path.stations;
    let (a, p, b) = (st[i - 1].xy(), st[i].xy(), st[i + 1].xy());
    let (l0, l1) = (a.dist(p), p.dist(b));
    if l0 <= 0.0 || l1 <= 0.0 {
        return None;
    }
    let d0 = p.sub(a).scale(1.0 / l0);
    let d1 = b.sub(p).scale(1.0 / l1);
    let theta = d0.cross(d1).atan2(d0.dot(d1));
    if theta.abs() < 1e-6 || theta.abs() > PI - 1e-6 {
        return None;
    }
    let tau = radius * (theta.abs() * 0.5).tan();
    if tau > 0.5 * l0.min(l1) {
        return None;
    }
    let arcs = arc_positions(st);
    let t1 = p.sub(d0.scale(tau));
    let t2 = p.add(d1.scale(tau));
    let (_, z1) = sample_at(st, &arcs, arcs[i] - tau);
    let (_, z2) = sample_at(st, &arcs, arcs[i] + tau);

    let left = d0.perp();
    let normal = if theta > 0.0 { left } else { left.scale(-1.0) };
    let centre = t1.add(normal.scale(radius));
    let from = t1.sub(centre);
    let phi0 = from.y.atan2(from.x);
    let n = ((theta.abs() * radius / MAX_CHORD).ceil() as usize).max(1);
    let arc_kind = if (z2 - z1).abs() > 1e-12 { SegmentKind::Ramp } else { SegmentKind::Landing };

    let mut out: Vec<Station> = st[..i].to_vec();
    out.push(Station { x: t1.x, y: t1.y, z: z1, kind: st[i].kind });
    for k in 1..=n {
        let f = k as f64 / n as f64;
        let q = if k == n {
            t2
        } else {
            let phi = phi0 + theta * f;
            centre.add(Point2::new(phi.cos(), phi.sin()).scale(radius))
        };
        out.push(Station { x: q.x, y: q.y, z: z1 + (z2 - z1) * f, kind: arc_kind });
    }
    out.extend_from_slice(&st[i + 1..]);
    Some(RampPath::from_stations(out, path.slope_used, path.layered, path.route))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathfinder::path::Route;

    fn l_path() -> RampPath {
        let s = |x, y| Station { x, y, z: 0.0, kind: SegmentKind::Landing };
        RampPath::from_stations(
            vec![s(0.0, 0.0), s(2.0, 0.0), s(5.0, 0.0), s(5.0, 5.0)],
            0.0,
            false,
            Route::Planar,
        )
    }

    #[test]
    fn straight_mode_removes_collinear() {
        let p = smooth_path(&l_path(), PathType::Straight, 1.0, |_| true);
        assert_eq!(p.stations.len(), 3);
        assert!((p.planar_length - 10.0).abs() < 1e-12);
    }

    #[test]
    fn curve_mode_fillets_corner() {
        let p = smooth_path(&l_path(), PathType::Curve, 1.0, |_| true);
        assert!(p.planar_length < 10.0);
        // arc length pi/2 with R = 1, replacing two tangent lengths of 1
        assert!((p.planar_length - (8.0 + PI / 2.0)).abs() < 0.01);
        for w in p.stations.windows(2) {
            assert!(w[0].xy().dist(w[1].xy()) <= 5.0);
        }
        let chords = p.stations.windows(2).filter(|w| w[0].xy().dist(w[1].xy()) <= MAX_CHORD + 1e-12).count();
        assert!(chords >= 16);
    }

    #[test]
    fn rejected_fillet_keeps_corner() {
        let p = smooth_path(&l_path(), PathType::Curve, 1.0, |_| false);
        assert_eq!(p.stations.len(), 3);
    }
}
