//! Geometric checks a candidate centre-line must pass before it is accepted.

use std::f64::consts::PI;

use super::path::RampPath;
use crate::geom2d::Point2;
use crate::grid::{ColumnIndex, GridMatrix};

/// Points along the path at roughly `step` spacing, always including every station.
pub(crate) fn samples(path: &RampPath, step: f64) -> Vec<(f64, Point2, f64)> {
    let st = &path.stations;
    let mut out = Vec::new();
    let mut arc = 0.0;
    for (i, w) in st.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        let len = a.xy().dist(b.xy());
        let n = ((len / step).ceil() as usize).max(1);
        let first = if i == 0 { 0 } else { 1 };
        for k in first..=n {
            let t = k as f64 / n as f64;
            out.push((arc + len * t, a.xy().lerp(b.xy(), t), a.z + (b.z - a.z) * t));
        }
        arc += len;
    }
    if st.len() == 1 {
        out.push((0.0, st[0].xy(), st[0].z));
    }
    out
}

/// First arc position where the deck envelope `[z - thickness, z + clearance]`
/// enters a blocked cell of the (already inflated) grid.
pub fn occupancy_conflict(
    path: &RampPath,
    grid: &GridMatrix,
    index: &ColumnIndex,
    thickness: f64,
    clearance: f64,
) -> Option<f64> {
    for (arc, p, z) in samples(path, grid.resolution * 0.5) {
        let Some(cell) = grid.cell_of(p) else {
            return Some(arc);
        };
        let (lo, hi) = grid.bands_spanning(z - thickness, z + clearance);
        if index.any_blocked(cell, lo, hi) {
            return Some(arc);
        }
    }
    None
}

/// Two parts of the path that sit closer than `leg_spacing` in plan and less
/// than `layer_separation` apart vertically, yet are far apart along the path.
pub fn self_exclusion_conflict(
    path: &RampPath,
    leg_spacing: f64,
    layer_separation: f64,
    step: f64,
) -> Option<(f64, f64)> {
    let pts = samples(path, step);
    let ex2 = leg_spacing * leg_spacing;
    for (a, &(sa, pa, za)) in pts.iter().enumerate() {
        for &(sb, pb, zb) in &pts[a + 1..] {
            let d = pa.sub(pb);
            let d2 = d.dot(d);
            if d2 >= ex2 || (za - zb).abs() >= layer_separation - 1e-9 {
                continue;
            }
            let arc = sb - sa;
            if arc * arc > 2.0 * d2 + 1e-9 {
                return Some((sa, sb));
            }
        }
    }
    None
}

/// Plan turn angle at each station; zero at the ends.
pub fn turn_angles(path: &RampPath) -> Vec<f64> {
    let st = &path.stations;
    let mut out = vec![0.0; st.len()];
    for i in 1..st.len().saturating_sub(1) {
        let d0 = st[i].xy().sub(st[i - 1].xy());
        let d1 = st[i + 1].xy().sub(st[i].xy());
        out[i] = d0.cross(d1).abs().atan2(d0.dot(d1));
    }
    out
}

/// Station where a mitred sweep of width `width` would fold over itself.
pub fn foldover_station(path: &RampPath, width: f64) -> Option<usize> {
    let st = &path.stations;
    let ang = turn_angles(path);
    for (i, a) in ang.iter().enumerate() {
        if *a > PI - 1e-6 {
            return Some(i);
        }
    }
    for i in 0..st.len().saturating_sub(1) {
        let len = st[i].xy().dist(st[i + 1].xy());
        let need = 0.5 * width * ((ang[i] * 0.5).tan() + (ang[i + 1] * 0.5).tan());
        if need > len + 1e-9 {
            return Some(if ang[i] >= ang[i + 1] { i } else { i + 1 });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathfinder::path::{Route, SegmentKind, Station};

    fn flat(pts: &[(f64, f64)]) -> RampPath {
        let st = pts
            .iter()
            .map(|&(x, y)| Station { x, y, z: 0.0, kind: SegmentKind::Landing })
            .collect();
        RampPath::from_stations(st, 0.0, false, Route::Planar)
    }

    #[test]
    fn right_angle_is_not_self_conflict() {
        let p = flat(&[(0.0, 0.0), (5.0, 0.0), (5.0, 5.0)]);
        assert_eq!(self_exclusion_conflict(&p, 1.215, 2.25, 0.1), None);
    }

    #[test]
    fn tight_hairpin_conflicts() {
        let p = flat(&[(0.0, 0.0), (5.0, 0.0), (5.0, 1.0), (0.0, 1.0)]);
        assert!(self_exclusion_conflict(&p, 1.215, 2.25, 0.1).is_some());
        let wide = flat(&[(0.0, 0.0), (5.0, 0.0), (5.0, 1.3), (0.0, 1.3)]);
        assert_eq!(self_exclusion_conflict(&wide, 1.215, 2.25, 0.1), None);
    }

    #[test]
    fn foldover_on_short_connector() {
        let p = flat(&[(0.0, 0.0), (5.0, 0.0), (5.0, 0.5), (0.0, 0.5)]);
        assert!(foldover_station(&p, 0.915).is_some());
        let ok = flat(&[(0.0, 0.0), (5.0, 0.0), (5.0, 1.3), (0.0, 1.3)]);
        assert_eq!(foldover_station(&ok, 0.915), None);
    }
}
