use serde::{Deserialize, Serialize};

use super::check::RuleResult;
use super::rules::RuleSet;
use crate::geometry::SupportPlacement;
use crate::params::RampParams;
use crate::pathfinder::{Candidate, RampPath, Route, Station};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathSummary {
    pub route: Route,
    pub slope_used: f64,
    pub planar_length: f64,
    pub ramp_run: f64,
    pub rise: f64,
    pub intermediate_landings: usize,
    pub layered: bool,
    pub stations: Vec<Station>,
}

impl From<&RampPath> for PathSummary {
    fn from(p: &RampPath) -> Self {
        PathSummary {
            route: p.route,
            slope_used: p.slope_used,
            planar_length: p.planar_length,
            ramp_run: p.ramp_run(),
            rise: p.rise(),
            intermediate_landings: p.landing_count,
            layered: p.layered,
            stations: p.stations.clone(),
        }
    }
}

/// Rule-by-rule verdict for one generation. Wall-clock timing is reported
/// separately so that identical inputs give identical reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplianceReport {
    pub schema_version: u32,
    pub generator: String,
    pub stage_score: u8,
    pub feasibility_message: String,
    pub rules: Vec<RuleResult>,
    pub rule_set: RuleSet,
    pub candidates: Vec<Candidate>,
    pub selected_slope: Option<f64>,
    pub path: Option<PathSummary>,
    pub supports: Vec<SupportPlacement>,
    pub endpoints_swapped: bool,
    pub params: RampParams,
}

impl ComplianceReport {
    pub fn all_pass(&self) -> bool {
        self.rules.iter().all(|r| r.pass)
    }

    pub fn failing_rules(&self) -> Vec<&str> {
        self.rules.iter().filter(|r| !r.pass).map(|r| r.rule.as_str()).collect()
    }
}
