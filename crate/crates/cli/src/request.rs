//! Generation requests, shared by the command line, the batch harness and
//! the HTTP service.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use rampgen_core::compliance::RuleSet;
use rampgen_core::env::{parse_environment, EnvironmentFile, EnvironmentSpec};
use rampgen_core::export::{self, MaterialTable, MTL_FILE};
use rampgen_core::params::RampParams;
use rampgen_core::pipeline::{self, Generation, Timing};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RequestError {
    #[error("malformed request: {0}")]
    Malformed(String),
    #[error("{0}")]
    Environment(#[from] rampgen_core::env::EnvError),
    #[error("{0}")]
    Params(#[from] rampgen_core::params::ParamError),
    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("file references are not accepted here")]
    FileReference,
}

#[derive(Debug, Error)]
#[error("{path}: {source}")]
pub struct WriteError {
    pub path: PathBuf,
    #[source]
    pub source: std::io::Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Obj,
    Stl,
    Report,
    Mesh,
}

impl Format {
    pub const ALL: [Format; 4] = [Format::Obj, Format::Stl, Format::Report, Format::Mesh];

    pub fn parse_list(s: &str) -> Result<BTreeSet<Format>, RequestError> {
        let mut out = BTreeSet::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let f = match tok {
                "obj" => Format::Obj,
                "stl" => Format::Stl,
                "report" => Format::Report,
                "mesh" | "mesh-json" | "mesh_json" => Format::Mesh,
                other => return Err(RequestError::Malformed(format!("unknown output format `{other}`"))),
            };
            out.insert(f);
        }
        Ok(out)
    }
}

/// Request body as it arrives on the wire.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenerationRequest {
    /// Inline environment document, or `{"file": "<path>"}`.
    pub environment: Value,
    #[serde(default)]
    pub params: Option<Value>,
    #[serde(default)]
    pub outputs: Option<Vec<Format>>,
}

/// A request whose inputs have been parsed and validated.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub env: EnvironmentSpec,
    pub params: RampParams,
    pub outputs: BTreeSet<Format>,
}

fn read(path: &Path) -> Result<String, RequestError> {
    fs::read_to_string(path).map_err(|source| RequestError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn file_ref(v: &Value) -> Option<&str> {
    let obj = v.as_object()?;
    if obj.len() != 1 {
        return None;
    }
    obj.get("file")?.as_str()
}

pub fn parse_params(v: Option<&Value>) -> Result<RampParams, RequestError> {
    match v {
        None | Some(Value::Null) => Ok(RampParams::default()),
        Some(v) => Ok(RampParams::from_json(&v.to_string())?),
    }
}

impl GenerationRequest {
    pub fn from_json(text: &str) -> Result<Self, RequestError> {
        serde_json::from_str(text).map_err(|e| RequestError::Malformed(e.to_string()))
    }

    /// Resolve and validate. `base` is where relative file references are
    /// looked up; `None` forbids them.
    pub fn prepare(&self, base: Option<&Path>) -> Result<Prepared, RequestError> {
        let env_text = match (file_ref(&self.environment), base) {
            (Some(f), Some(dir)) => read(&dir.join(f))?,
            (Some(_), None) => return Err(RequestError::FileReference),
            (None, _) => {
                // Reject unknown fields before validation so the message names them.
                serde_json::from_value::<EnvironmentFile>(self.environment.clone())
                    .map_err(|e| rampgen_core::env::EnvError::MalformedInput(e.to_string()))?;
                self.environment.to_string()
            }
        };
        let env = parse_environment(&env_text)?;
        let params = parse_params(self.params.as_ref())?;
        let outputs = match &self.outputs {
            Some(list) => list.iter().copied().collect(),
            None => Format::ALL.into_iter().collect(),
        };
        Ok(Prepared { env, params, outputs })
    }
}

impl Prepared {
    pub fn from_files(env: &Path, params: Option<&Path>, outputs: BTreeSet<Format>) -> Result<Self, RequestError> {
        let env = parse_environment(&read(env)?)?;
        let params = match params {
            Some(p) => RampParams::from_json(&read(p)?)?,
            None => RampParams::default(),
        };
        Ok(Prepared { env, params, outputs })
    }

    pub fn run(&self, rules: &RuleSet, materials: &MaterialTable) -> Outcome {
        let generation = pipeline::generate(&self.env, &self.params, rules);
        Outcome::new(generation, &self.outputs, materials)
    }
}

/// Serialized artifacts of one generation. The report is always present;
/// mesh formats only when a model was built and the format was requested.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub score: u8,
    pub message: String,
    pub failing_rules: Vec<String>,
    pub report: String,
    pub obj: Option<(String, String)>,
    pub stl: Option<Vec<u8>>,
    pub mesh: Option<String>,
    pub timing: Timing,
}

impl Outcome {
    pub fn new(g: Generation, outputs: &BTreeSet<Format>, materials: &MaterialTable) -> Self {
        let model = g.model.as_ref();
        let want = |f| outputs.contains(&f);
        Outcome {
            score: g.score(),
            message: g.report.feasibility_message.clone(),
            failing_rules: g.report.failing_rules().into_iter().map(String::from).collect(),
            report: export::write_report(&g.report),
            obj: model.filter(|_| want(Format::Obj)).map(|m| export::write_obj(m, materials)),
            stl: model.filter(|_| want(Format::Stl)).map(export::write_stl),
            mesh: model
                .filter(|_| want(Format::Mesh))
                .map(|m| export::write_mesh_json(m, materials)),
            timing: g.timing,
        }
    }

    /// Exit status for the command line.
    pub fn exit_code(&self) -> i32 {
        if self.score == 4 {
            0
        } else {
            2
        }
    }

    /// Write everything to `dir`, returning the file names written.
    pub fn write(&self, dir: &Path) -> Result<Vec<String>, WriteError> {
        let wrap = |path: PathBuf| move |source| WriteError { path, source };
        fs::create_dir_all(dir).map_err(wrap(dir.to_path_buf()))?;
        let mut files: Vec<(&str, Vec<u8>)> = vec![("report.json", self.report.clone().into_bytes())];
        if let Some((obj, mtl)) = &self.obj {
            files.push(("ramp.obj", obj.clone().into_bytes()));
            files.push((MTL_FILE, mtl.clone().into_bytes()));
        }
        if let Some(stl) = &self.stl {
            files.push(("ramp.stl", stl.clone()));
        }
        if let Some(mesh) = &self.mesh {
            files.push(("mesh.json", mesh.clone().into_bytes()));
        }
        let timing = serde_json::to_string_pretty(&self.timing).expect("timing serializes") + "\n";
        files.push(("timing.json", timing.into_bytes()));

        let mut names = Vec::new();
        for (name, bytes) in files {
            let path = dir.join(name);
            fs::write(&path, bytes).map_err(wrap(path.clone()))?;
            names.push(name.to_string());
        }
        Ok(names)
    }

    /// HTTP response body. The report and mesh texts are spliced in verbatim
    /// so they match the files the command line writes byte for byte.
    pub fn response_body(&self) -> String {
        let mesh = self.mesh.as_deref().unwrap_or("null");
        format!("{{\"report\":{},\"mesh\":{}}}\n", self.report, mesh)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARE: &str = r#"{"boundary":[[0,0],[12,0],[12,6],[0,6]],"start":[1,3,0],"end":[11,3,0.4]}"#;

    #[test]
    fn format_list() {
        let f = Format::parse_list("obj, mesh-json").unwrap();
        assert_eq!(f.into_iter().collect::<Vec<_>>(), vec![Format::Obj, Format::Mesh]);
        assert!(Format::parse_list("dae").is_err());
    }

    #[test]
    fn inline_request_prepares() {
        let text = format!(r#"{{"environment":{SQUARE},"params":{{"path":{{"width":1.0}}}},"outputs":["report"]}}"#);
        let p = GenerationRequest::from_json(&text).unwrap().prepare(None).unwrap();
        assert_eq!(p.params.path.width, 1.0);
        assert_eq!(p.outputs.len(), 1);
    }

    #[test]
    fn file_reference_needs_base() {
        let req = GenerationRequest::from_json(r#"{"environment":{"file":"x.json"}}"#).unwrap();
        assert!(matches!(req.prepare(None), Err(RequestError::FileReference)));
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(GenerationRequest::from_json(r#"{"environment":{},"colour":1}"#).is_err());
        let text = format!(r#"{{"environment":{SQUARE},"params":{{"path":{{"wdith":1.0}}}}}}"#);
        let err = GenerationRequest::from_json(&text).unwrap().prepare(None).unwrap_err();
        assert!(err.to_string().contains("wdith"), "{err}");
    }
}
