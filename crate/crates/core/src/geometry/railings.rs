use serde::Serialize;

use super::mesh::{quad_prism, rect_corners, TriMesh};
use super::sweep::{polygon_profile, square_profile, sweep};
use super::GeomError;
use crate::params::{GeomParams, RailingType};
use crate::pathfinder::RampPath;
use crate::vec3::Vec3;

const ROUND_SIDES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Left => 1.0,
            Side::Right => -1.0,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "part", rename_all = "snake_case")]
pub enum RailingPart {
    /// Rail whose centre-line sits `height` above the deck.
    Rail { side: Side, height: f64 },
    Post { side: Side, arc: f64 },
}

/// Number of posts along one edge of a path of plan length `length`.
pub fn posts_per_side(length: f64, spacing: f64) -> usize {
    ((length / spacing - 1e-9).ceil().max(1.0) as usize) + 1
}

/// Rails and posts along both deck edges, with a description of each solid.
pub fn build_railings(path: &RampPath, params: &GeomParams) -> Result<Vec<(TriMesh, RailingPart)>, GeomError> {
    let rp = &params.railing;
    let th = rp.thickness;
    let edge = params.deck_width / 2.0 - th / 2.0;
    let centre: Vec<Vec3> = path.stations.iter().map(|s| Vec3::new(s.x, s.y, s.z)).collect();
    let rail_heights: &[f64] = match rp.kind {
        RailingType::DoubleRounded => &[rp.height, rp.height / 2.0],
        _ => &[rp.height],
    };
    let material = params.materials.railing.as_str();
    let length = path.planar_length;
    let n = posts_per_side(length, rp.density);
    let mut out = Vec::new();
    for side in [Side::Left, Side::Right] {
        let e = side.sign() * edge;
        for (k, &h) in rail_heights.iter().enumerate() {
            let profile = match rp.kind {
                RailingType::SingleSquare => square_profile(e, h, th),
                _ => polygon_profile(e, h, th / 2.0, ROUND_SIDES),
            };
            let role = if k == 0 { "top" } else { "mid" };
            let name = format!("railing_{}_{role}", side.label());
            out.push((sweep(&name, material, &centre, &profile)?, RailingPart::Rail { side, height: h }));
        }
        for p in 0..n {
            let arc = (length * p as f64 / (n - 1) as f64).clamp(th / 2.0, (length - th / 2.0).max(th / 2.0));
            let (at, _) = path.sample(arc);
            let dir = path.direction_at(arc);
            let c = at.add(dir.perp().scale(e));
            let corners = rect_corners(c, dir, th / 2.0, th / 2.0);
            // each corner sits on the deck surface at its own arc position
            let bottom = corners.map(|q| path.sample(arc + q.sub(c).dot(dir)).1);
            let top = [path.sample(arc).1 + rp.height; 4];
            let name = format!("railing_{}_post_{p:02}", side.label());
            out.push((quad_prism(name, material, corners, bottom, top), RailingPart::Post { side, arc }));
        }
    }
    Ok(out)
}
