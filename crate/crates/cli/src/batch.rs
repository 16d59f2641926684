//! Batch harness: run a manifest of generation cases and tabulate the scores.
//!
//! ```json
//! {
//!   "cases": [
//!     { "id": "t1", "environment": { "file": "trial1.json" }, "expect": 4 },
//!     { "id": "wall", "environment": { "file": "sealed.json" }, "expect": [1, 2] }
//!   ]
//! }
//! ```
//!
//! File references resolve against the manifest's directory.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rampgen_core::compliance::RuleSet;
use rampgen_core::export::MaterialTable;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::request::{Format, GenerationRequest};

#[derive(Debug, Error)]
pub enum BatchError {
    #[error("{path}: {reason}")]
    Manifest { path: PathBuf, reason: String },
    #[error("manifest has no cases")]
    Empty,
    #[error("duplicate case id `{0}`")]
    DuplicateId(String),
    #[error("case id `{0}` must be non-empty ASCII letters, digits, `-`, `_` or `.`")]
    BadId(String),
    #[error(transparent)]
    Write(#[from] crate::request::WriteError),
}

/// Accepted score, either one value or an inclusive range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Expect {
    Exact(u8),
    Range([u8; 2]),
}

impl Expect {
    pub fn admits(&self, score: u8) -> bool {
        match *self {
            Expect::Exact(s) => score == s,
            Expect::Range([lo, hi]) => (lo..=hi).contains(&score),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Case {
    pub id: String,
    pub environment: Value,
    #[serde(default)]
    pub params: Option<Value>,
    #[serde(default)]
    pub outputs: Option<Vec<Format>>,
    #[serde(default)]
    pub expect: Option<Expect>,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub cases: Vec<Case>,
    #[serde(skip)]
    pub base: PathBuf,
}

impl Manifest {
    pub fn load(path: &Path) -> Result<Self, BatchError> {
        let err = |reason: String| BatchError::Manifest {
            path: path.to_path_buf(),
            reason,
        };
        let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
        let mut m: Manifest = serde_json::from_str(&text).map_err(|e| err(e.to_string()))?;
        m.base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(m)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub id: String,
    /// `None` when the inputs were rejected before generation.
    pub score: Option<u8>,
    pub expect: Option<Expect>,
    pub ok: bool,
    pub seconds: f64,
    pub failing_rules: Vec<String>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub rows: Vec<Row>,
    pub total_seconds: f64,
    pub all_ok: bool,
}

impl Summary {
    pub fn table(&self) -> String {
        let mut s = String::new();
        let w = self.rows.iter().map(|r| r.id.len()).max().unwrap_or(2).max(2);
        let _ = writeln!(s, "{:<w$}  score  ok    seconds  message", "id");
        for r in &self.rows {
            let score = r.score.map_or("-".to_string(), |v| v.to_string());
            let ok = if r.ok { "yes" } else { "NO" };
            let _ = writeln!(s, "{:<w$}  {:<5}  {:<4} {:>8.3}  {}", r.id, score, ok, r.seconds, r.message);
        }
        let passed = self.rows.iter().filter(|r| r.ok).count();
        let _ = writeln!(s, "{passed}/{} rows as expected, {:.2} s total", self.rows.len(), self.total_seconds);
        s
    }
}

/// Run every case in order. Per-case failures are recorded, never raised.
/// With `out`, each case's artifacts land in `out/<id>/` and the summary in
/// `out/summary.json`.
pub fn run_batch(
    manifest: &Manifest,
    rules: &RuleSet,
    materials: &MaterialTable,
    out: Option<&Path>,
) -> Result<Summary, BatchError> {
    if manifest.cases.is_empty() {
        return Err(BatchError::Empty);
    }
    let mut seen = std::collections::BTreeSet::new();
    for c in &manifest.cases {
        let safe = |ch: char| ch.is_ascii_alphanumeric() || "-_.".contains(ch);
        if c.id.is_empty() || c.id.starts_with('.') || !c.id.chars().all(safe) {
            return Err(BatchError::BadId(c.id.clone()));
        }
        if !seen.insert(c.id.as_str()) {
            return Err(BatchError::DuplicateId(c.id.clone()));
        }
    }

    let t0 = Instant::now();
    let mut rows = Vec::with_capacity(manifest.cases.len());
    for case in &manifest.cases {
        let started = Instant::now();
        let req = GenerationRequest {
            environment: case.environment.clone(),
            params: case.params.clone(),
            outputs: case.outputs.clone(),
        };
        let row = match req.prepare(Some(&manifest.base)) {
            Ok(prepared) => {
                let outcome = prepared.run(rules, materials);
                if let Some(dir) = out {
                    outcome.write(&dir.join(&case.id))?;
                }
                Row {
                    id: case.id.clone(),
                    score: Some(outcome.score),
                    expect: case.expect,
                    ok: case.expect.map_or(true, |e| e.admits(outcome.score)),
                    seconds: started.elapsed().as_secs_f64(),
                    failing_rules: outcome.failing_rules,
                    message: outcome.message,
                }
            }
            Err(e) => Row {
                id: case.id.clone(),
                score: None,
                expect: case.expect,
                ok: false,
                seconds: started.elapsed().as_secs_f64(),
                failing_rules: Vec::new(),
                message: format!("invalid input: {e}"),
            },
        };
        rows.push(row);
    }
    let all_ok = rows.iter().all(|r| r.ok);
    let summary = Summary {
        rows,
        total_seconds: t0.elapsed().as_secs_f64(),
        all_ok,
    };
    if let Some(dir) = out {
        let path = dir.join("summary.json");
        let text = serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n";
        std::fs::write(&path, text).map_err(|source| crate::request::WriteError { path, source })?;
    }
    Ok(summary)
}
