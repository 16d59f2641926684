//! Elevation profile along a flat centre-line.

use thiserror::Error;

use super::path::{RampPath, Route, SegmentKind, Station};
use crate::geom2d::Point2;
use crate::params::{LandingMode, SearchParams};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HeightError {
    #[error("route is {available:.3} m long but {required:.3} m of ramp and landings are needed")]
    InsufficientRun { required: f64, available: f64 },
    #[error("invalid manual landings: {0}")]
    InvalidManualLandings(String),
}

impl HeightError {
    pub fn shortfall(&self) -> f64 {
        match self {
            HeightError::InsufficientRun { required, available } => required - available,
            HeightError::InvalidManualLandings(_) => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Stretch {
    kind: SegmentKind,
    start: f64,
    end: f64,
    z0: f64,
    z1: f64,
}

/// Number of intermediate landings an automatic layout inserts for `rise`.
pub fn intermediate_landings_needed(rise: f64, max_rise: f64) -> usize {
    if rise <= 1e-12 {
        return 0;
    }
    ((rise / max_rise - 1e-9).ceil() as usize).saturating_sub(1)
}

/// Shortest plan length that can carry `rise` at `slope` with automatic landings.
pub fn required_run(rise: f64, slope: f64, params: &SearchParams) -> f64 {
    if rise <= 1e-12 {
        return params.landing_length;
    }
    let n = intermediate_landings_needed(rise, params.max_rise);
    rise / slope + (n + 2) as f64 * params.landing_length
}

/// Lay landings and ramp flights along `polyline` so that it climbs from
/// `start_z` by `rise`. Extra length goes into the two terminal landings.
pub fn assign_heights(
    polyline: &[Point2],
    start_z: f64,
    rise: f64,
    slope: f64,
    params: &SearchParams,
) -> Result<RampPath, HeightError> {
    let arcs = cumulative(polyline);
    let total = *arcs.last().unwrap_or(&0.0);
    let end_z = start_z + rise;

    let (stretches, slope_used) = match &params.landing_mode {
        LandingMode::Automatic => {
            let need = required_run(rise, slope, params);
            if total < need - 1e-9 {
                return Err(HeightError::InsufficientRun {
                    required: need,
                    available: total,
                });
            }
            if rise <= 1e-12 {
                (
                    vec![Stretch {
                        kind: SegmentKind::Landing,
                        start: 0.0,
                        end: total,
                        z0: start_z,
                        z1: start_z,
                    }],
                    0.0,
                )
            } else {
                let zones = corner_zones(polyline, &arcs, params.deck_width / 2.0);
                let balanced = balanced_layout(total, start_z, rise, slope, params);
                if respects_corners(&balanced, &zones) {
                    (balanced, slope)
                } else {
                    (corner_layout(&zones, total, start_z, rise, slope, params)?, slope)
                }
            }
        }
        LandingMode::Manual(marks) => manual_layout(marks, total, start_z, rise, slope, params)?,
    };

    let stations = build_stations(polyline, &arcs, &stretches, end_z);
    Ok(RampPath::from_stations(stations, slope_used, false, Route::Planar))
}

/// Turns sharper than this are kept on landings.
pub const MAX_FLIGHT_TURN: f64 = 10.0 * std::f64::consts::PI / 180.0;

/// Arc interval around a polyline corner covered by its miter.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Zone {
    start: f64,
    end: f64,
    /// Too sharp to sit on a flight.
    sharp: bool,
}

fn corner_zones(poly: &[Point2], arcs: &[f64], half_width: f64) -> Vec<Zone> {
    let mut out = Vec::new();
    for i in 1..poly.len().saturating_sub(1) {
        let (u, v) = (poly[i].sub(poly[i - 1]), poly[i + 1].sub(poly[i]));
        let turn = u.cross(v).abs().atan2(u.dot(v));
        if turn > 1e-6 {
            let m = half_width * (turn / 2.0).tan() + 1e-9;
            out.push(Zone {
                start: arcs[i] - m,
                end: arcs[i] + m,
                sharp: turn > MAX_FLIGHT_TURN,
            });
        }
    }
    out
}

fn inside(zones: &[Zone], a: f64) -> Option<&Zone> {
    zones.iter().find(|z| a > z.start && a < z.end)
}

/// No slope break inside a miter, no sharp turn on a flight.
fn respects_corners(stretches: &[Stretch], zones: &[Zone]) -> bool {
    stretches.iter().skip(1).all(|s| inside(zones, s.start).is_none())
        && stretches
            .iter()
            .filter(|s| s.kind == SegmentKind::Ramp)
            .all(|s| !zones.iter().any(|z| z.sharp && z.start < s.end && z.end > s.start))
}

/// Equal flights with the slack split between the terminal landings.
fn balanced_layout(total: f64, start_z: f64, rise: f64, slope: f64, params: &SearchParams) -> Vec<Stretch> {
    let l = params.landing_length;
    let need = required_run(rise, slope, params);
    let n = intermediate_landings_needed(rise, params.max_rise);
    let flights = n + 1;
    let pad = (total - need).max(0.0) / 2.0;
    let flight_run = rise / slope / flights as f64;
    let mut bounds = vec![(SegmentKind::Landing, l + pad)];
    for f in 0..flights {
        bounds.push((SegmentKind::Ramp, flight_run));
        if f + 1 < flights {
            bounds.push((SegmentKind::Landing, l));
        }
    }
    bounds.push((SegmentKind::Landing, l + pad));
    layout(&bounds, start_z, rise, total)
}

/// Flights as early and as long as allowed, broken before sharp corners,
/// with every slope break outside the corner miters.
fn corner_layout(
    zones: &[Zone],
    total: f64,
    start_z: f64,
    rise: f64,
    slope: f64,
    params: &SearchParams,
) -> Result<Vec<Stretch>, HeightError> {
    let l = params.landing_length;
    let escape = |mut a: f64| {
        while let Some(z) = inside(zones, a) {
            a = z.end;
        }
        a
    };
    let mut flights: Vec<(f64, f64)> = Vec::new();
    let mut remaining = rise;
    let mut pos = escape(l);
    while remaining > 1e-12 {
        let want = remaining.min(params.max_rise) / slope;
        let wall = zones
            .iter()
            .filter(|z| z.sharp && z.end > pos)
            .map(|z| z.start.max(pos))
            .fold(total - l, f64::min);
        let mut end = (pos + want).min(wall);
        while let Some(z) = inside(zones, end) {
            end = z.start;
        }
        let run = end - pos;
        if run < want - 1e-9 && run < l {
            // too short to be worth a landing after it; skip past the obstacle
            let next = zones
                .iter()
                .filter(|z| z.end > pos && (z.sharp || z.start <= end + 1e-12))
                .map(|z| z.end)
                .fold(f64::INFINITY, f64::min);
            if !next.is_finite() || next >= total - l {
                return Err(HeightError::InsufficientRun {
                    required: pos + remaining / slope + l,
                    available: total,
                });
            }
            pos = escape(next);
            continue;
        }
        flights.push((pos, end));
        remaining -= run * slope;
        if remaining > 1e-12 {
            pos = escape(end + l);
        }
    }
    let last = flights.last().map_or(0.0, |f| f.1);
    if total - last < l - 1e-9 {
        return Err(HeightError::InsufficientRun {
            required: last + l,
            available: total,
        });
    }
    let mut out = Vec::new();
    let (mut s, mut z) = (0.0, start_z);
    for (idx, &(a, b)) in flights.iter().enumerate() {
        out.push(Stretch { kind: SegmentKind::Landing, start: s, end: a, z0: z, z1: z });
        let dz = if idx + 1 == flights.len() { start_z + rise - z } else { (b - a) * slope };
        out.push(Stretch { kind: SegmentKind::Ramp, start: a, end: b, z0: z, z1: z + dz });
        s = b;
        z += dz;
    }
    out.push(Stretch { kind: SegmentKind::Landing, start: s, end: total, z0: z, z1: z });
    Ok(out)
}

fn cumulative(poly: &[Point2]) -> Vec<f64> {
    let mut arcs = Vec::with_capacity(poly.len());
    let mut acc = 0.0;
    for (i, p) in poly.iter().enumerate() {
        if i > 0 {
            acc += poly[i - 1].dist(*p);
        }
        arcs.push(acc);
    }
    arcs
}

/// Turn (kind, length) pairs into stretches; ramp rise is shared in
/// proportion to run and the last stretch is stretched to `total`.
fn layout(parts: &[(SegmentKind, f64)], start_z: f64, rise: f64, total: f64) -> Vec<Stretch> {
    let ramp_total: f64 = parts
        .iter()
        .filter(|p| p.0 == SegmentKind::Ramp)
        .map(|p| p.1)
        .sum();
    let mut out = Vec::with_capacity(parts.len());
    let (mut s, mut z) = (0.0, start_z);
    for (idx, &(kind, len)) in parts.iter().enumerate() {
        let end = if idx + 1 == parts.len() { total } else { s + len };
        let dz = match kind {
            SegmentKind::Ramp if ramp_total > 0.0 => rise * len / ramp_total,
            _ => 0.0,
        };
        out.push(Stretch {
            kind,
            start: s,
            end,
            z0: z,
            z1: z + dz,
        });
        s = end;
        z += dz;
    }
    out
}

fn manual_layout(
    marks: &[f64],
    total: f64,
    start_z: f64,
    rise: f64,
    slope: f64,
    params: &SearchParams,
) -> Result<(Vec<Stretch>, f64), HeightError> {
    let l = params.landing_length;
    let bad = |m: String| Err(HeightError::InvalidManualLandings(m));
    if rise <= 1e-12 {
        if !marks.is_empty() {
            return bad("a level route takes no intermediate landings".into());
        }
        return Ok((layout(&[(SegmentKind::Landing, total)], start_z, 0.0, total), 0.0));
    }
    // flights run between the landing ends and the next landing start
    let mut parts = vec![(SegmentKind::Landing, l)];
    let mut cursor = l;
    for (idx, &m) in marks.iter().enumerate() {
        if m <= cursor + 1e-9 {
            return bad(format!(
                "landing {idx} at {m:.3} m overlaps the preceding landing ending at {cursor:.3} m"
            ));
        }
        parts.push((SegmentKind::Ramp, m - cursor));
        parts.push((SegmentKind::Landing, l));
        cursor = m + l;
    }
    let last_ramp = total - l - cursor;
    if last_ramp <= 1e-9 {
        return bad(format!(
            "landings leave no room for a final flight and the {l:.3} m end landing on a {total:.3} m route"
        ));
    }
    parts.push((SegmentKind::Ramp, last_ramp));
    parts.push((SegmentKind::Landing, l));

    let ramp_total: f64 = parts
        .iter()
        .filter(|p| p.0 == SegmentKind::Ramp)
        .map(|p| p.1)
        .sum();
    let used = rise / ramp_total;
    for (idx, p) in parts.iter().filter(|p| p.0 == SegmentKind::Ramp).enumerate() {
        let flight_rise = used * p.1;
        if flight_rise > params.max_rise + 1e-9 {
            return bad(format!(
                "flight {idx} rises {flight_rise:.3} m, more than the {:.3} m allowed between landings",
                params.max_rise
            ));
        }
    }
    if used > slope + 1e-12 {
        return Err(HeightError::InsufficientRun {
            required: rise / slope + (marks.len() + 2) as f64 * l,
            available: total,
        });
    }
    Ok((layout(&parts, start_z, rise, total), used))
}

fn z_at(stretches: &[Stretch], a: f64) -> f64 {
    for st in stretches {
        if a <= st.end + 1e-12 {
            let len = st.end - st.start;
            let t = if len > 0.0 { ((a - st.start) / len).clamp(0.0, 1.0) } else { 1.0 };
            return st.z0 + (st.z1 - st.z0) * t;
        }
    }
    stretches.last().map_or(0.0, |s| s.z1)
}

fn kind_at(stretches: &[Stretch], a: f64) -> SegmentKind {
    stretches
        .iter()
        .find(|st| a >= st.start && a <= st.end)
        .or(stretches.last())
        .map_or(SegmentKind::Landing, |s| s.kind)
}

fn build_stations(poly: &[Point2], arcs: &[f64], stretches: &[Stretch], end_z: f64) -> Vec<Station> {
    // (arc, vertex index if this is a polyline vertex)
    let mut events: Vec<(f64, Option<usize>)> = arcs.iter().enumerate().map(|(i, a)| (*a, Some(i))).collect();
    for st in stretches.iter().skip(1) {
        events.push((st.start, None));
    }
    events.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.is_some().cmp(&a.1.is_some())));
    let mut merged: Vec<(f64, Option<usize>)> = Vec::with_capacity(events.len());
    for e in events {
        match merged.last_mut() {
            Some(last) if (e.0 - last.0).abs() < 1e-9 => {
                if last.1.is_none() {
                    last.1 = e.1;
                }
            }
            _ => merged.push(e),
        }
    }

    let total = *arcs.last().unwrap_or(&0.0);
    let mut out = Vec::with_capacity(merged.len());
    let mut prev_arc = 0.0;
    for (n, &(a, vertex)) in merged.iter().enumerate() {
        let p = match vertex {
            Some(i) => poly[i],
            None => point_at(poly, arcs, a),
        };
        let kind = if n == 0 {
            SegmentKind::Landing
        } else {
            kind_at(stretches, 0.5 * (prev_arc + a))
        };
        let z = if (a - total).abs() < 1e-12 { end_z } else { z_at(stretches, a) };
        out.push(Station { x: p.x, y: p.y, z, kind });
        prev_arc = a;
    }
    out
}

fn point_at(poly: &[Point2], arcs: &[f64], a: f64) -> Point2 {
    for i in 0..poly.len() - 1 {
        if a <= arcs[i + 1] {
            let len = arcs[i + 1] - arcs[i];
            let t = if len > 0.0 { (a - arcs[i]) / len } else { 0.0 };
            return poly[i].lerp(poly[i + 1], t);
        }
    }
    *poly.last().unwrap()
}
