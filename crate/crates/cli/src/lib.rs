//! Command line and HTTP front end for the ramp generator.

pub mod batch;
pub mod request;
pub mod server;

use rampgen_core::export::MaterialTable;
use thiserror::Error;

pub use batch::{run_batch, Manifest, Summary};
pub use request::{Format, GenerationRequest, Outcome, Prepared, RequestError};

/// Environment variable naming a JSON file of extra material colours.
pub const MATERIALS_ENV: &str = "RAMPGEN_MATERIALS";

#[derive(Debug, Error)]
#[error("materials file {path}: {reason}")]
pub struct MaterialsError {
    pub path: String,
    pub reason: String,
}

/// Built-in materials, extended by the file in `RAMPGEN_MATERIALS` if set.
pub fn materials_from_env() -> Result<MaterialTable, MaterialsError> {
    match std::env::var(MATERIALS_ENV) {
        Ok(path) if !path.is_empty() => {
            let err = |reason: String| MaterialsError {
                path: path.clone(),
                reason,
            };
            let text = std::fs::read_to_string(&path).map_err(|e| err(e.to_string()))?;
            MaterialTable::extended(&text).map_err(|e| err(e.to_string()))
        }
        _ => Ok(MaterialTable::default()),
    }
}
