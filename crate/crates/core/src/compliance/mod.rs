//! Rule checking against a configurable rule set, the 1 to 4 stage score,
//! and the report that carries both.

pub mod check;
pub mod probe;
pub mod report;
pub mod rules;

use thiserror::Error;

pub use check::{check, not_evaluated, Limit, RuleResult, RULE_IDS};
pub use report::{ComplianceReport, PathSummary, SCHEMA_VERSION};
pub use rules::{RuleSet, RULES_ENV};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ComplianceError {
    #[error("model does not belong to this path: {0}")]
    MismatchedProvenance(String),
    #[error("invalid rule set: {0}")]
    InvalidRules(String),
}

/// How far one generation got.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StageOutcome {
    pub grid_built: bool,
    /// No free route joins start and end at all.
    pub sealed: bool,
    pub path_generated: bool,
    pub model_built: bool,
    pub rules_pass: bool,
}

/// 1 feasibility feedback only, 2 environment analysed, 3 path generated,
/// 4 model built with every rule passing.
pub fn stage_score(o: &StageOutcome) -> u8 {
    if !o.grid_built || o.sealed {
        1
    } else if !o.path_generated {
        2
    } else if !(o.model_built && o.rules_pass) {
        3
    } else {
        4
    }
}
