use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

const BUILT_IN: &str = include_str!("../../config/materials.json");

/// Diffuse colour used for tags missing from the table.
pub const FALLBACK_KD: [f64; 3] = [0.7, 0.7, 0.7];

/// Material tag to diffuse RGB.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MaterialTable(pub BTreeMap<String, [f64; 3]>);

impl Default for MaterialTable {
    fn default() -> Self {
        serde_json::from_str(BUILT_IN).expect("shipped materials.json is valid")
    }
}

impl MaterialTable {
    /// Built-in table with `extra` entries added or replaced.
    pub fn extended(extra: &str) -> Result<Self, serde_json::Error> {
        let more: MaterialTable = serde_json::from_str(extra)?;
        let mut t = Self::default();
        t.0.extend(more.0);
        Ok(t)
    }

    pub fn kd(&self, tag: &str) -> [f64; 3] {
        self.0.get(tag).copied().unwrap_or(FALLBACK_KD)
    }
}
