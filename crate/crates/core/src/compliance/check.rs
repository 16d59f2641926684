//! Rule evaluation. Slopes, rises and landing lengths come from station
//! coordinates; width, cross-slope, handrail height and headroom come from
//! vertical probes of the built meshes. Generator parameters are never read.

use serde::{Deserialize, Serialize};

use super::probe::Probe;
use super::rules::RuleSet;
use super::ComplianceError;
use crate::geom2d::Point2;
use crate::geometry::{RailingPart, RampModel, Side};
use crate::pathfinder::RampPath;

pub const R_SLOPE: &str = "R-SLOPE";
pub const R_CROSS_SLOPE: &str = "R-CROSS-SLOPE";
pub const R_WIDTH: &str = "R-WIDTH";
pub const R_RISE_PER_RUN: &str = "R-RISE-PER-RUN";
pub const R_LANDING: &str = "R-LANDING";
pub const R_HANDRAIL: &str = "R-HANDRAIL";
pub const R_CLEARANCE: &str = "R-CLEARANCE";

pub const RULE_IDS: [&str; 7] = [R_SLOPE, R_CROSS_SLOPE, R_WIDTH, R_RISE_PER_RUN, R_LANDING, R_HANDRAIL, R_CLEARANCE];

/// Slack for comparisons against station coordinates.
const COORD_TOL: f64 = 1e-9;
/// Slack for comparisons against probed mesh values.
const PROBE_TOL: f64 = 1e-6;
/// Arc spacing of headroom probes.
const HEADROOM_STEP: f64 = 0.05;
/// Largest gap between the probed deck top and the centre-line elevation.
const SURFACE_WINDOW: f64 = 0.05;
/// Arc spacing of deck cross-section probes.
const SECTION_STEP: f64 = 0.25;
/// Cross-sections wider than this multiple of the narrowest one are corner junctions.
const JUNCTION_RATIO: f64 = 1.02;
/// Lateral positions tried per rail probe.
const RAIL_SCAN: usize = 100;
/// Probe hits further than this from the deck elevation belong to another layer.
const LAYER_WINDOW: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Limit {
    Max(f64),
    Min(f64),
    Range([f64; 2]),
}

impl Limit {
    fn admits(&self, v: f64, tol: f64) -> bool {
        match *self {
            Limit::Max(m) => v <= m + tol,
            Limit::Min(m) => v >= m - tol,
            Limit::Range([lo, hi]) => v >= lo - tol && v <= hi + tol,
        }
    }

    /// How badly `v` misses (or how narrowly it meets) the limit; larger is worse.
    fn badness(&self, v: f64) -> f64 {
        match *self {
            Limit::Max(m) => v - m,
            Limit::Min(m) => m - v,
            Limit::Range([lo, hi]) => (lo - v).max(v - hi),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleResult {
    pub rule: String,
    pub pass: bool,
    pub evaluated: bool,
    /// The worst measurement found, if any.
    pub measured: Option<f64>,
    pub limit: Limit,
    /// Station index where the worst measurement was taken.
    pub location: Option<usize>,
    pub detail: String,
}

pub fn limit_for(rule: &str, rules: &RuleSet) -> Limit {
    match rule {
        R_SLOPE => Limit::Max(rules.max_slope),
        R_CROSS_SLOPE => Limit::Max(rules.max_cross_slope),
        R_WIDTH => Limit::Min(rules.min_width),
        R_RISE_PER_RUN => Limit::Max(rules.max_rise_per_run),
        R_LANDING => Limit::Min(rules.min_landing_length),
        R_HANDRAIL => Limit::Range(rules.handrail_height),
        R_CLEARANCE => Limit::Min(rules.min_clearance),
        _ => unreachable!("unknown rule {rule}"),
    }
}

/// Every rule marked failed without measurement, for runs that never built a model.
pub fn not_evaluated(rules: &RuleSet, reason: &str) -> Vec<RuleResult> {
    RULE_IDS
        .iter()
        .map(|id| RuleResult {
            rule: id.to_string(),
            pass: false,
            evaluated: false,
            measured: None,
            limit: limit_for(id, rules),
            location: None,
            detail: format!("not evaluated: {reason}"),
        })
        .collect()
}

/// Collects (value, station) measurements and reduces them to one result.
fn judge(rule: &str, rules: &RuleSet, tol: f64, samples: &[(f64, usize)], empty: &str, what: &str) -> RuleResult {
    let limit = limit_for(rule, rules);
    let pass = samples.iter().all(|&(v, _)| limit.admits(v, tol));
    let worst = samples
        .iter()
        .copied()
        .reduce(|a, b| if limit.badness(b.0) > limit.badness(a.0) { b } else { a });
    let failing = samples.iter().filter(|&&(v, _)| !limit.admits(v, tol)).count();
    let detail = match worst {
        None => empty.to_string(),
        Some(_) if failing > 0 => format!("{failing} of {} {what} out of limit", samples.len()),
        Some(_) => format!("{} {what} checked", samples.len()),
    };
    RuleResult {
        rule: rule.to_string(),
        pass,
        evaluated: true,
        measured: worst.map(|w| w.0),
        limit,
        location: worst.map(|w| w.1),
        detail,
    }
}

pub fn check(path: &RampPath, model: &RampModel, rules: &RuleSet) -> Result<Vec<RuleResult>, ComplianceError> {
    if model.path != *path {
        return Err(ComplianceError::MismatchedProvenance("model was built from a different path".into()));
    }
    let st = &path.stations;
    if st.len() < 2 {
        return Err(ComplianceError::MismatchedProvenance("path has fewer than two stations".into()));
    }
    let deck = Probe::new(&model.deck);
    for (i, s) in st.iter().enumerate() {
        match top_near(&deck, s.xy(), s.z) {
            Some(top) if (top - s.z).abs() <= PROBE_TOL => {}
            _ => {
                return Err(ComplianceError::MismatchedProvenance(format!(
                    "deck surface does not pass through station {i}"
                )))
            }
        }
    }
    let arcs = path.arc_positions();
    let total = path.planar_length;
    let seg_of = |s: f64| arcs.partition_point(|&a| a <= s).saturating_sub(1).min(st.len() - 2);
    let n_sections = ((total / SECTION_STEP).ceil() as usize).max(8);
    let sections: Vec<(usize, Point2, Point2, f64)> = (0..n_sections)
        .map(|k| {
            let s = total * (k as f64 + 0.5) / n_sections as f64;
            let (p, z) = path.sample(s);
            (seg_of(s), p, path.direction_at(s).perp(), z)
        })
        .collect();

    let mut slopes = Vec::new();
    for i in 0..st.len() - 1 {
        let run = st[i].xy().dist(st[i + 1].xy());
        let dz = (st[i + 1].z - st[i].z).abs();
        if dz > COORD_TOL {
            slopes.push((if run > 0.0 { dz / run } else { f64::MAX }, i));
        }
    }

    // level stretches and flights between them
    let mut landings = Vec::new();
    let mut flights = Vec::new();
    let mut i = 0;
    if (st[1].z - st[0].z).abs() > COORD_TOL {
        landings.push((0.0, 0));
    }
    while i < st.len() - 1 {
        let level = (st[i + 1].z - st[i].z).abs() <= COORD_TOL;
        let first = i;
        let mut acc = 0.0;
        while i < st.len() - 1 && ((st[i + 1].z - st[i].z).abs() <= COORD_TOL) == level {
            acc += if level { st[i].xy().dist(st[i + 1].xy()) } else { (st[i + 1].z - st[i].z).abs() };
            i += 1;
        }
        if level {
            landings.push((acc, first));
        } else {
            flights.push((acc, first));
        }
    }
    if (st[st.len() - 1].z - st[st.len() - 2].z).abs() > COORD_TOL {
        landings.push((0.0, st.len() - 1));
    }

    let mut widths = Vec::new();
    let mut cross = Vec::new();
    let mut extents = Vec::new();
    for &(i, m, n, z) in &sections {
        let l = extent_near(&deck, m, n, z);
        let r = extent_near(&deck, m, n.scale(-1.0), z);
        extents.push((l, r));
        widths.push((l + r, i));
        let half = 0.5 * l.min(r);
        if half > 0.0 {
            let zl = top_near(&deck, m.add(n.scale(half)), z);
            let zr = top_near(&deck, m.sub(n.scale(half)), z);
            if let (Some(zl), Some(zr)) = (zl, zr) {
                cross.push(((zl - zr).abs() / (2.0 * half), i));
            }
        }
    }

    // Rails are probed only on plain cross-sections; near a corner the
    // lateral line runs into the turning area where no edge rail crosses it.
    let narrowest = widths.iter().map(|w| w.0).fold(f64::INFINITY, f64::min);
    let mut rails = Vec::new();
    let mut missing = 0;
    for side in [Side::Left, Side::Right] {
        let tops = top_rails(model, side);
        let probes: Vec<Probe> = tops.iter().map(|m| Probe::new(m)).collect();
        let sign = if side == Side::Left { 1.0 } else { -1.0 };
        for (&(i, m, n, z), &(l, r)) in sections.iter().zip(&extents) {
            if l + r > JUNCTION_RATIO * narrowest {
                continue;
            }
            let reach = if side == Side::Left { l } else { r };
            let mut best: Option<f64> = None;
            for k in 0..=RAIL_SCAN {
                let q = m.add(n.scale(sign * reach * k as f64 / RAIL_SCAN as f64));
                let Some(base) = top_near(&deck, q, z) else { continue };
                for p in &probes {
                    let above = p.hits(q).into_iter().filter(|&h| h > base && h < base + 2.0).reduce(f64::max);
                    if let Some(h) = above {
                        best = Some(best.map_or(h - base, |b: f64| b.max(h - base)));
                    }
                }
            }
            match best {
                Some(h) => rails.push((h, i)),
                None => missing += 1,
            }
        }
    }

    let all: Vec<Probe> = model.solids().map(Probe::new).collect();
    let n = (total / HEADROOM_STEP).ceil().max(1.0) as usize;
    let mut heads = Vec::new();
    for k in 0..=n {
        let s = total * k as f64 / n as f64;
        let (p, z) = path.sample(s);
        let hits: Vec<f64> = all.iter().flat_map(|m| m.hits(p)).collect();
        // the deck's own surface here, allowing for warp between stations
        let own = hits
            .iter()
            .copied()
            .filter(|h| (h - z).abs() <= SURFACE_WINDOW)
            .fold(z, f64::max);
        let overhead = hits.into_iter().filter(|&h| h > own + PROBE_TOL).reduce(f64::min);
        if let Some(h) = overhead {
            heads.push((h - own, seg_of(s)));
        }
    }

    let mut handrail = judge(R_HANDRAIL, rules, PROBE_TOL, &rails, "no handrail found", "rail probes");
    if rails.is_empty() {
        handrail.pass = false;
    }
    if missing > 0 {
        handrail.pass = false;
        handrail.detail = format!("{}; {missing} probe positions have no rail", handrail.detail);
    }
    Ok(vec![
        judge(R_SLOPE, rules, COORD_TOL, &slopes, "path is level", "sloped segments"),
        judge(R_CROSS_SLOPE, rules, PROBE_TOL, &cross, "no deck cross-sections probed", "deck cross-sections"),
        judge(R_WIDTH, rules, PROBE_TOL, &widths, "no deck cross-sections probed", "deck cross-sections"),
        judge(R_RISE_PER_RUN, rules, COORD_TOL, &flights, "path is level", "flights"),
        judge(R_LANDING, rules, COORD_TOL, &landings, "no landings", "landings"),
        handrail,
        judge(R_CLEARANCE, rules, PROBE_TOL, &heads, "nothing overhead", "covered probe points"),
    ])
}

fn near(hits: &[f64], z: f64, window: f64) -> Vec<f64> {
    hits.iter().copied().filter(|h| (h - z).abs() <= window).collect()
}

fn top_near(deck: &Probe, p: Point2, z: f64) -> Option<f64> {
    near(&deck.hits(p), z, LAYER_WINDOW).into_iter().reduce(f64::max)
}

/// Distance from `p` along `dir` to the deck edge, ignoring other layers and
/// other legs beyond a gap.
fn extent_near(deck: &Probe, p: Point2, dir: Point2, z: f64) -> f64 {
    const STEP: f64 = 0.01;
    let hit = |d: f64| top_near(deck, p.add(dir.scale(d)), z).is_some();
    if !hit(0.0) {
        return 0.0;
    }
    let mut lo = 0.0;
    while hit(lo + STEP) {
        lo += STEP;
        if lo > 1e3 {
            return lo;
        }
    }
    let mut hi = lo + STEP;
    for _ in 0..50 {
        let mid = 0.5 * (lo + hi);
        if hit(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Top rails on one side: the highest rail solids there.
fn top_rails(model: &RampModel, side: Side) -> Vec<&crate::geometry::TriMesh> {
    let rails: Vec<(usize, f64)> = model
        .railing_parts
        .iter()
        .enumerate()
        .filter_map(|(i, p)| match *p {
            RailingPart::Rail { side: s, height } if s == side => Some((i, height)),
            _ => None,
        })
        .collect();
    let h = rails.iter().map(|r| r.1).fold(f64::NEG_INFINITY, f64::max);
    rails.iter().filter(|r| r.1 == h).map(|r| &model.railings[r.0]).collect()
}
