use std::path::Path;

use serde::{Deserialize, Serialize};

use super::ComplianceError;

/// Environment variable naming a replacement rules file.
pub const RULES_ENV: &str = "RAMPGEN_RULES";

const DEFAULT_RULES: &str = include_str!("../../config/rules.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleSet {
    /// Where the numbers come from.
    pub source: String,
    pub version: u32,
    pub max_slope: f64,
    pub max_cross_slope: f64,
    pub min_width: f64,
    pub max_rise_per_run: f64,
    pub min_landing_length: f64,
    pub handrail_height: [f64; 2],
    pub min_clearance: f64,
}

impl Default for RuleSet {
    fn default() -> Self {
        RuleSet::from_json(DEFAULT_RULES).expect("shipped rules.json is valid")
    }
}

impl RuleSet {
    pub fn from_json(text: &str) -> Result<Self, ComplianceError> {
        let r: RuleSet = serde_json::from_str(text).map_err(|e| ComplianceError::InvalidRules(e.to_string()))?;
        r.validate()?;
        Ok(r)
    }

    pub fn load(path: &Path) -> Result<Self, ComplianceError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ComplianceError::InvalidRules(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// The file named by `RAMPGEN_RULES` if set, else the shipped defaults.
    pub fn from_env() -> Result<Self, ComplianceError> {
        match std::env::var_os(RULES_ENV) {
            Some(p) if !p.is_empty() => Self::load(Path::new(&p)),
            _ => Ok(Self::default()),
        }
    }

    pub fn validate(&self) -> Result<(), ComplianceError> {
        let vals = [
            ("max_slope", self.max_slope),
            ("max_cross_slope", self.max_cross_slope),
            ("min_width", self.min_width),
            ("max_rise_per_run", self.max_rise_per_run),
            ("min_landing_length", self.min_landing_length),
            ("handrail_height", self.handrail_height[0]),
            ("min_clearance", self.min_clearance),
        ];
        for (name, v) in vals {
            if !(v > 0.0 && v.is_finite()) {
                return Err(ComplianceError::InvalidRules(format!("{name} must be > 0")));
            }
        }
        let [lo, hi] = self.handrail_height;
        if !(hi.is_finite() && lo <= hi) {
            return Err(ComplianceError::InvalidRules("handrail_height range is empty".into()));
        }
        Ok(())
    }
}
