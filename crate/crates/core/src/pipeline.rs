//! One generation, start to finish: rasterize, route, sweep the slopes,
//! build the solids, check them.

use std::time::Instant;

use serde::Serialize;

use crate::compliance::{self, not_evaluated, stage_score, ComplianceReport, PathSummary, RuleSet, StageOutcome};
use crate::env::EnvironmentSpec;
use crate::export::GENERATOR;
use crate::geometry::{assemble_model, RampModel};
use crate::grid::{locate_endpoints, rasterize};
use crate::params::RampParams;
use crate::pathfinder::{optimize_slope, PathError, Planner};

/// Seconds spent in each stage.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Timing {
    pub input: f64,
    pub processing: f64,
    pub optimisation: f64,
    pub actualisation: f64,
    pub compliance: f64,
    pub total: f64,
}

#[derive(Debug, Clone)]
pub struct Generation {
    pub report: ComplianceReport,
    pub model: Option<RampModel>,
    pub timing: Timing,
}

impl Generation {
    pub fn score(&self) -> u8 {
        self.report.stage_score
    }
}

struct Clock {
    t0: Instant,
    last: Instant,
}

impl Clock {
    fn new() -> Self {
        let now = Instant::now();
        Clock { t0: now, last: now }
    }

    fn lap(&mut self) -> f64 {
        let now = Instant::now();
        let d = now.duration_since(self.last).as_secs_f64();
        self.last = now;
        d
    }
}

/// Report for a run that stopped before any path existed.
pub fn early_report(
    score_inputs: StageOutcome,
    message: String,
    params: &RampParams,
    rules: &RuleSet,
    swapped: bool,
) -> ComplianceReport {
    ComplianceReport {
        schema_version: compliance::SCHEMA_VERSION,
        generator: GENERATOR.to_string(),
        stage_score: stage_score(&score_inputs),
        rules: not_evaluated(rules, &message),
        feasibility_message: message,
        rule_set: rules.clone(),
        candidates: Vec::new(),
        selected_slope: None,
        path: None,
        supports: Vec::new(),
        endpoints_swapped: swapped,
        params: params.clone(),
    }
}

pub fn generate(env: &EnvironmentSpec, params: &RampParams, rules: &RuleSet) -> Generation {
    let mut clock = Clock::new();
    let mut timing = Timing::default();
    let mut outcome = StageOutcome::default();
    let swapped = env.endpoints_swapped;
    let finish = |report: ComplianceReport, model: Option<RampModel>, mut timing: Timing, clock: &Clock| {
        timing.total = clock.t0.elapsed().as_secs_f64();
        Generation { report, model, timing }
    };

    let gp = &params.grid;
    let grid = rasterize(env, gp.resolution, gp.z_quantum, env.end.z + gp.headroom)
        .and_then(|g| locate_endpoints(env, &g).map(|cells| (g, cells)));
    timing.input = clock.lap();
    let (grid, (start, end)) = match grid {
        Ok(v) => v,
        Err(e) => {
            let r = early_report(outcome, format!("environment analysis failed: {e}"), params, rules, swapped);
            return finish(r, None, timing, &clock);
        }
    };
    outcome.grid_built = true;

    let planner = Planner::new(&grid, start, end, env.start.z, env.end.z, params.search_params());
    timing.processing = clock.lap();
    let planner = match planner {
        Ok(p) if p.is_connected() => p,
        Ok(_) => {
            outcome.sealed = true;
            let r = early_report(outcome, PathError::NoPath.to_string(), params, rules, swapped);
            return finish(r, None, timing, &clock);
        }
        Err(e) => {
            outcome.sealed = e == PathError::NoPath;
            let r = early_report(outcome, e.to_string(), params, rules, swapped);
            return finish(r, None, timing, &clock);
        }
    };

    let sweep = optimize_slope(&planner);
    let best = sweep.best.as_ref().map(|(i, p)| (sweep.candidates[*i].slope, planner.smooth(p)));
    timing.optimisation = clock.lap();
    let Some((slope, path)) = best else {
        let err = sweep.error.clone().unwrap_or(PathError::NoFeasibleRamp("no candidate slopes".into()));
        outcome.sealed = err == PathError::NoPath;
        let mut r = early_report(outcome, err.to_string(), params, rules, swapped);
        r.candidates = sweep.candidates;
        return finish(r, None, timing, &clock);
    };
    outcome.path_generated = true;

    let mut report = early_report(outcome, String::new(), params, rules, swapped);
    report.candidates = sweep.candidates;
    report.selected_slope = Some(slope);
    report.path = Some(PathSummary::from(&path));

    let model = assemble_model(&path, &params.geom_params(), env.ground_z, &env.obstacles);
    timing.actualisation = clock.lap();
    let model = match model {
        Ok(m) => m,
        Err(e) => {
            let msg = format!("path found but the ramp could not be built: {e}");
            report.rules = not_evaluated(rules, &msg);
            report.feasibility_message = msg;
            return finish(report, None, timing, &clock);
        }
    };
    outcome.model_built = true;
    report.supports = model.support_log.clone();

    match compliance::check(&path, &model, rules) {
        Ok(results) => {
            report.rules = results;
            outcome.rules_pass = report.all_pass();
            report.feasibility_message = if outcome.rules_pass {
                format!(
                    "ramp built: {:.3} m plan length, {:.3} m rise at slope {:.5}, {} intermediate landing(s)",
                    path.planar_length,
                    path.rise(),
                    path.slope_used,
                    path.landing_count
                )
            } else {
                format!("ramp built but fails {}", report.failing_rules().join(", "))
            };
        }
        Err(e) => {
            let msg = e.to_string();
            report.rules = not_evaluated(rules, &msg);
            report.feasibility_message = msg;
        }
    }
    report.stage_score = stage_score(&outcome);
    timing.compliance = clock.lap();
    finish(report, Some(model), timing, &clock)
}
