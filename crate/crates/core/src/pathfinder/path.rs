use serde::{Deserialize, Serialize};

use crate::geom2d::Point2;
use crate::grid::{Cell, GridMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SegmentKind {
    Ramp,
    Landing,
}

/// A centre-line vertex. `kind` describes the segment arriving at this
/// station; the first station is always a landing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Station {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub kind: SegmentKind,
}

impl Station {
    pub fn xy(&self) -> Point2 {
        Point2::new(self.x, self.y)
    }
}

/// Which planner produced the path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Flat A* followed by height assignment.
    Planar,
    /// Search over the elevation/landing state lattice.
    Lattice,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RampPath {
    pub stations: Vec<Station>,
    pub slope_used: f64,
    pub planar_length: f64,
    /// Intermediate landings; the two termini are not counted.
    pub landing_count: usize,
    pub layered: bool,
    pub route: Route,
}

impl RampPath {
    pub fn from_stations(stations: Vec<Station>, slope_used: f64, layered: bool, route: Route) -> Self {
        let planar_length = stations
            .windows(2)
            .map(|w| w[0].xy().dist(w[1].xy()))
            .sum();
        let landing_count = intermediate_landings(&stations);
        Self {
            stations,
            slope_used,
            planar_length,
            landing_count,
            layered,
            route,
        }
    }

    /// Cumulative plan-view arc length at each station.
    pub fn arc_positions(&self) -> Vec<f64> {
        arc_positions(&self.stations)
    }

    pub fn rise(&self) -> f64 {
        match (self.stations.first(), self.stations.last()) {
            (Some(a), Some(b)) => b.z - a.z,
            _ => 0.0,
        }
    }

    /// Total plan length of ramp (sloped) segments.
    pub fn ramp_run(&self) -> f64 {
        self.stations
            .windows(2)
            .filter(|w| w[1].kind == SegmentKind::Ramp)
            .map(|w| w[0].xy().dist(w[1].xy()))
            .sum()
    }

    /// Plan point and elevation at arc length `s`, clamped to the path.
    pub fn sample(&self, s: f64) -> (Point2, f64) {
        sample_at(&self.stations, &self.arc_positions(), s)
    }

    /// Unit plan direction of the segment containing arc length `s`.
    pub fn direction_at(&self, s: f64) -> Point2 {
        let arcs = self.arc_positions();
        let i = segment_index(&arcs, s);
        let (a, b) = (self.stations[i].xy(), self.stations[i + 1].xy());
        b.sub(a).normalized()
    }
}

pub(crate) fn arc_positions(stations: &[Station]) -> Vec<f64> {
    let mut out = Vec::with_capacity(stations.len());
    let mut acc = 0.0;
    for (i, s) in stations.iter().enumerate() {
        if i > 0 {
            acc += stations[i - 1].xy().dist(s.xy());
        }
        out.push(acc);
    }
    out
}

pub(crate) fn segment_index(arcs: &[f64], s: f64) -> usize {
    let n = arcs.len();
    if n < 2 {
        return 0;
    }
    match arcs.binary_search_by(|a| a.partial_cmp(&s).unwrap()) {
        Ok(i) => i.min(n - 2),
        Err(i) => i.saturating_sub(1).min(n - 2),
    }
}

pub(crate) fn sample_at(stations: &[Station], arcs: &[f64], s: f64) -> (Point2, f64) {
    if stations.len() == 1 {
        return (stations[0].xy(), stations[0].z);
    }
    let total = *arcs.last().unwrap();
    let s = s.clamp(0.0, total);
    let i = segment_index(arcs, s);
    let len = arcs[i + 1] - arcs[i];
    let t = if len > 0.0 { (s - arcs[i]) / len } else { 0.0 };
    let (a, b) = (stations[i], stations[i + 1]);
    (a.xy().lerp(b.xy(), t), a.z + (b.z - a.z) * t)
}

fn intermediate_landings(stations: &[Station]) -> usize {
    // maximal landing stretches with ramp on both sides
    let kinds: Vec<SegmentKind> = stations.iter().skip(1).map(|s| s.kind).collect();
    let mut count = 0;
    let mut seen_ramp = false;
    let mut in_landing = false;
    for k in kinds {
        match k {
            SegmentKind::Ramp => {
                if in_landing && seen_ramp {
                    count += 1;
                }
                in_landing = false;
                seen_ramp = true;
            }
            SegmentKind::Landing => in_landing = true,
        }
    }
    count
}

/// Grid path produced by the flat search. Length is tracked as
/// `orth·r + diag·r·√2` so costs compare exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct CellPath {
    pub cells: Vec<Cell>,
    pub orth_steps: u32,
    pub diag_steps: u32,
    pub length: f64,
}

impl CellPath {
    /// Cell centres with collinear interior points removed.
    pub fn polyline(&self, grid: &GridMatrix) -> Vec<Point2> {
        let mut pts: Vec<Point2> = Vec::new();
        let mut last_dir: Option<(i64, i64)> = None;
        for w in self.cells.windows(2) {
            let d = (w[1].i as i64 - w[0].i as i64, w[1].j as i64 - w[0].j as i64);
            if last_dir != Some(d) {
                pts.push(grid.cell_center(w[0]));
                last_dir = Some(d);
            }
        }
        if let Some(last) = self.cells.last() {
            pts.push(grid.cell_center(*last));
        }
        pts
    }
}
