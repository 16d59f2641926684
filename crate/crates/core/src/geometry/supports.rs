use serde::{Deserialize, Serialize};

use super::mesh::{quad_prism, rect_corners, TriMesh};
use crate::env::Obstacle;
use crate::geom2d::{self, Point2};
use crate::params::GeomParams;
use crate::pathfinder::RampPath;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SupportStatus {
    Placed,
    /// Moved sideways to clear a lower deck or an obstacle.
    Shifted,
    /// No lateral position within half the deck width was clear.
    Dropped,
    /// The deck is too close to the ground to need a column.
    Omitted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportPlacement {
    pub index: usize,
    pub arc: f64,
    pub status: SupportStatus,
    pub lateral_offset: f64,
    pub height: f64,
}

pub fn candidate_count(length: f64, spacing: f64) -> usize {
    ((length / spacing - 1e-9).ceil().max(1.0) as usize) + 1
}

/// Square columns from the deck underside down to `ground_z`.
pub fn build_supports(
    path: &RampPath,
    ground_z: f64,
    params: &GeomParams,
    obstacles: &[Obstacle],
) -> (Vec<TriMesh>, Vec<SupportPlacement>) {
    let sp = &params.supports;
    let mut meshes = Vec::new();
    let mut log = Vec::new();
    if sp.density <= 0.0 || path.stations.len() < 2 {
        return (meshes, log);
    }
    let side = sp.thickness;
    let half = side / 2.0;
    let t = params.deck_thickness;
    let w = params.deck_width;
    let length = path.planar_length;
    let n = candidate_count(length, sp.density);
    for k in 0..n {
        let arc = (length * k as f64 / (n - 1) as f64).clamp(half, (length - half).max(half));
        let (at, z) = path.sample(arc);
        let dir = path.direction_at(arc);
        let height = z - t - ground_z;
        if height < t {
            log.push(SupportPlacement { index: k, arc, status: SupportStatus::Omitted, lateral_offset: 0.0, height });
            continue;
        }
        let top_min = path.sample(arc - half).1 - t;
        let mut placed = None;
        for offset in [0.0, w / 4.0, -w / 4.0, w / 2.0, -w / 2.0] {
            let c = at.add(dir.perp().scale(offset));
            if !blocked(path, c, top_min, side, w, ground_z, obstacles) {
                placed = Some((offset, c));
                break;
            }
        }
        match placed {
            Some((offset, c)) => {
                let corners = rect_corners(c, dir, half, half);
                let top = corners.map(|q| path.sample(arc + q.sub(c).dot(dir)).1 - t);
                let mesh = quad_prism(format!("support_{:02}", meshes.len()), params.materials.support.as_str(), corners, [ground_z; 4], top);
                meshes.push(mesh);
                let status = if offset == 0.0 { SupportStatus::Placed } else { SupportStatus::Shifted };
                log.push(SupportPlacement { index: k, arc, status, lateral_offset: offset, height });
            }
            None => log.push(SupportPlacement { index: k, arc, status: SupportStatus::Dropped, lateral_offset: 0.0, height }),
        }
    }
    (meshes, log)
}

/// Would a column at `c` reaching up to `top` pass through part of the deck
/// below it, or through an obstacle?
fn blocked(path: &RampPath, c: Point2, top: f64, side: f64, w: f64, ground_z: f64, obstacles: &[Obstacle]) -> bool {
    let reach = w / 2.0 + side * std::f64::consts::FRAC_1_SQRT_2 + 1e-6;
    for s in path.stations.windows(2) {
        let (a, b) = (s[0], s[1]);
        if a.z >= top {
            continue;
        }
        // part of the segment whose deck top lies below the column top
        let end = if b.z > top {
            let f = (top - a.z) / (b.z - a.z);
            a.xy().lerp(b.xy(), f)
        } else {
            b.xy()
        };
        if geom2d::point_segment_distance(c, a.xy(), end) < reach {
            return true;
        }
    }
    let r = side * std::f64::consts::FRAC_1_SQRT_2;
    obstacles.iter().any(|o| {
        o.base_z < top
            && o.top_z > ground_z
            && (o.contains_xy(c) || geom2d::distance_to_boundary(c, &o.footprint) < r)
    })
}
