use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::heights::required_run;
use super::path::{RampPath, Route};
use super::{PathError, Planner};

/// One row of the slope sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub slope: f64,
    pub feasible: bool,
    pub route: Option<Route>,
    pub slope_used: Option<f64>,
    pub planar_length: Option<f64>,
    pub score: Option<f64>,
    pub message: Option<String>,
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub candidates: Vec<Candidate>,
    /// Winning candidate index and its path.
    pub best: Option<(usize, RampPath)>,
    pub error: Option<PathError>,
}

/// Weighted deviation from the desired slope plus normalised excess length.
pub fn score(slope: f64, length: f64, planner: &Planner) -> f64 {
    let p = &planner.params;
    let lower = planner.rise() / p.slope_max + 2.0 * p.landing_length;
    p.w_slope * (slope - p.desired_slope).abs() / p.desired_slope + p.w_length * (length / lower - 1.0)
}

/// Smallest score any path at `slope` could reach, from the shortest run it
/// would need.
pub fn score_bound(slope: f64, planner: &Planner) -> f64 {
    let need = required_run(planner.rise(), slope, &planner.params);
    score(slope, need, planner)
}

pub fn optimize_slope(planner: &Planner) -> SweepOutcome {
    let slopes = planner.params.slope_candidates();
    // A shallower slope needs a longer run, so once the steepest candidate
    // fails the rest cannot succeed.
    let steepest = *slopes.last().expect("at least one candidate slope");
    let top = planner.plan_at_slope(steepest);
    let rest = &slopes[..slopes.len() - 1];
    let mut results: Vec<(f64, Result<RampPath, PathError>)> = match &top {
        Ok(_) => sweep_rest(planner, rest, &top),
        Err(e) => rest
            .iter()
            .map(|&s| {
                let skipped = match e {
                    PathError::NoFeasibleRamp(_) => PathError::NoFeasibleRamp(format!(
                        "not attempted: the steeper slope {steepest:.5} is already infeasible"
                    )),
                    other => other.clone(),
                };
                (s, Err(skipped))
            })
            .collect(),
    };
    results.push((steepest, top));

    let mut candidates = Vec::with_capacity(results.len());
    let mut best: Option<(usize, f64)> = None;
    for (idx, (s, res)) in results.iter().enumerate() {
        match res {
            Ok(path) => {
                let sc = score(*s, path.planar_length, planner);
                let better = match best {
                    None => true,
                    Some((b, bs)) => sc < bs - 1e-12 || ((sc - bs).abs() <= 1e-12 && *s > slopes[b]),
                };
                if better {
                    best = Some((idx, sc));
                }
                candidates.push(Candidate {
                    slope: *s,
                    feasible: true,
                    route: Some(path.route),
                    slope_used: Some(path.slope_used),
                    planar_length: Some(path.planar_length),
                    score: Some(sc),
                    message: None,
                });
            }
            Err(e) => candidates.push(Candidate {
                slope: *s,
                feasible: false,
                route: None,
                slope_used: None,
                planar_length: None,
                score: None,
                message: Some(e.to_string()),
            }),
        }
    }

    let error = if best.is_some() {
        None
    } else {
        let errs: Vec<&PathError> = results.iter().filter_map(|(_, r)| r.as_ref().err()).collect();
        Some(
            errs.iter()
                .find(|e| !matches!(e, PathError::NoFeasibleRamp(_)))
                .map(|e| (*e).clone())
                .unwrap_or_else(|| {
                    let detail = match &results.last().unwrap().1 {
                        Err(PathError::NoFeasibleRamp(m)) => m.clone(),
                        _ => String::new(),
                    };
                    PathError::NoFeasibleRamp(format!(
                        "none of the {} candidate slopes yields a buildable ramp (at {:.5}: {detail})",
                        slopes.len(),
                        slopes[slopes.len() - 1]
                    ))
                }),
        )
    };
    let best = best.map(|(i, _)| {
        let path = results[i].1.clone().unwrap();
        (i, path)
    });
    SweepOutcome { candidates, best, error }
}

/// Flat-route attempts for every slope first; the lattice only runs where
/// its best conceivable score could still win.
fn sweep_rest(
    planner: &Planner,
    rest: &[f64],
    top: &Result<RampPath, PathError>,
) -> Vec<(f64, Result<RampPath, PathError>)> {
    let steepest = planner.params.slope_max;
    let planar: Vec<Result<Result<RampPath, String>, PathError>> =
        rest.par_iter().map(|&s| planner.plan_planar(s)).collect();
    let mut best = top.as_ref().map(|p| score(steepest, p.planar_length, planner)).unwrap_or(f64::INFINITY);
    for (s, r) in rest.iter().zip(&planar) {
        if let Ok(Ok(p)) = r {
            best = best.min(score(*s, p.planar_length, planner));
        }
    }
    let lattice: Vec<Option<Result<RampPath, PathError>>> = rest
        .par_iter()
        .zip(&planar)
        .map(|(&s, r)| match r {
            Ok(Err(why)) if score_bound(s, planner) <= best + 1e-12 => Some(planner.plan_lattice(s, why)),
            _ => None,
        })
        .collect();
    rest.iter()
        .zip(planar)
        .zip(lattice)
        .map(|((&s, r), lat)| {
            let res = match (r, lat) {
                (_, Some(l)) => l,
                (Ok(Ok(p)), None) => Ok(p),
                (Ok(Err(why)), None) => Err(PathError::NoFeasibleRamp(format!(
                    "{why}; lattice not attempted: no path at this slope can score below {:.4}, the best found is {best:.4}",
                    score_bound(s, planner)
                ))),
                (Err(e), None) => Err(e),
            };
            (s, res)
        })
        .collect()
}
