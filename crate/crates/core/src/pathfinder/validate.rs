//! Independent checks on a finished path. Everything here is recomputed from
//! station coordinates; nothing trusts the planner's bookkeeping.

use std::collections::HashMap;

use serde::Serialize;

use super::clearance::samples;
use super::path::{RampPath, SegmentKind};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathLimits {
    pub max_slope: f64,
    pub max_rise: f64,
    pub landing_length: f64,
    pub layer_separation: f64,
    /// Plan cell size used for the shared-footprint check.
    pub cell: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    TooFewStations,
    Descends { station: usize },
    RiseOnLanding { station: usize },
    SlopeExceeded { station: usize, slope: f64 },
    RiseBetweenLandings { station: usize, rise: f64 },
    ShortLanding { station: usize, length: f64 },
    StackedTooClose { arc_a: f64, arc_b: f64, dz: f64 },
}

pub fn validate_path(path: &RampPath, lim: &PathLimits) -> Vec<Violation> {
    let st = &path.stations;
    let mut out = Vec::new();
    if st.len() < 2 {
        out.push(Violation::TooFewStations);
        return out;
    }
    for i in 1..st.len() {
        let dz = st[i].z - st[i - 1].z;
        let run = st[i].xy().dist(st[i - 1].xy());
        if dz < -1e-9 {
            out.push(Violation::Descends { station: i });
        }
        if st[i].kind == SegmentKind::Landing && dz.abs() > 1e-9 {
            out.push(Violation::RiseOnLanding { station: i });
        }
        if dz > 1e-12 {
            let slope = if run > 0.0 { dz / run } else { f64::INFINITY };
            if slope > lim.max_slope + 1e-9 {
                out.push(Violation::SlopeExceeded { station: i, slope });
            }
        }
    }

    // maximal stretches of one kind: (kind, first station, last station, length, rise)
    let mut stretches: Vec<(SegmentKind, usize, usize, f64, f64)> = Vec::new();
    for i in 1..st.len() {
        let len = st[i].xy().dist(st[i - 1].xy());
        let dz = st[i].z - st[i - 1].z;
        match stretches.last_mut() {
            Some(s) if s.0 == st[i].kind => {
                s.2 = i;
                s.3 += len;
                s.4 += dz;
            }
            _ => stretches.push((st[i].kind, i - 1, i, len, dz)),
        }
    }
    let last = stretches.len() - 1;
    for (n, s) in stretches.iter().enumerate() {
        if s.0 == SegmentKind::Landing && s.3 < lim.landing_length - 1e-9 {
            out.push(Violation::ShortLanding { station: s.1, length: s.3 });
        }
        if s.0 == SegmentKind::Ramp {
            if s.4 > lim.max_rise + 1e-9 {
                out.push(Violation::RiseBetweenLandings { station: s.2, rise: s.4 });
            }
            if n == 0 || n == last {
                out.push(Violation::ShortLanding {
                    station: if n == 0 { 0 } else { st.len() - 1 },
                    length: 0.0,
                });
            }
        }
    }

    // samples sharing a plan cell must be vertically clear of each other
    let mut buckets: HashMap<(i64, i64), Vec<(f64, f64)>> = HashMap::new();
    for (arc, p, z) in samples(path, lim.cell * 0.5) {
        let key = ((p.x / lim.cell).floor() as i64, (p.y / lim.cell).floor() as i64);
        buckets.entry(key).or_default().push((arc, z));
    }
    let mut keys: Vec<_> = buckets.keys().copied().collect();
    keys.sort_unstable();
    'outer: for k in keys {
        let v = &buckets[&k];
        for a in 0..v.len() {
            for b in a + 1..v.len() {
                let (sa, za) = v[a];
                let (sb, zb) = v[b];
                if (sb - sa).abs() > 2.0 * lim.cell && (zb - za).abs() < lim.layer_separation - 1e-9 {
                    out.push(Violation::StackedTooClose {
                        arc_a: sa,
                        arc_b: sb,
                        dz: (zb - za).abs(),
                    });
                    break 'outer;
                }
            }
        }
    }
    out
}
