//! OBJ/MTL, binary STL and JSON writers.

pub mod materials;

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

pub use materials::MaterialTable;

use crate::compliance::ComplianceReport;
use crate::geometry::{RampModel, TriMesh};

pub const GENERATOR: &str = concat!("rampgen ", env!("CARGO_PKG_VERSION"));
pub const MESH_SCHEMA_VERSION: u32 = 1;

/// Every artifact for one model.
#[derive(Debug, Clone, PartialEq)]
pub struct ExportBundle {
    pub obj: String,
    pub mtl: String,
    pub stl: Vec<u8>,
    pub report: String,
    pub mesh: String,
}

impl ExportBundle {
    pub fn new(model: &RampModel, report: &ComplianceReport, materials: &MaterialTable) -> Self {
        let (obj, mtl) = write_obj(model, materials);
        ExportBundle {
            obj,
            mtl,
            stl: write_stl(model),
            report: write_report(report),
            mesh: write_mesh_json(model, materials),
        }
    }
}

pub const MTL_FILE: &str = "ramp.mtl";

fn fixed6(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

pub fn write_obj(model: &RampModel, materials: &MaterialTable) -> (String, String) {
    let solids: Vec<&TriMesh> = model.solids().collect();
    write_obj_solids(&solids, materials)
}

/// OBJ text (one `o` per solid, 1-based global indices) and the matching MTL.
pub fn write_obj_solids(solids: &[&TriMesh], materials: &MaterialTable) -> (String, String) {
    let mut obj = format!("# {GENERATOR}\nmtllib {MTL_FILE}\n");
    let mut used: Vec<&str> = Vec::new();
    let mut base = 1usize;
    for m in solids {
        let _ = writeln!(obj, "o {}", m.name);
        let _ = writeln!(obj, "usemtl {}", m.material);
        if !used.contains(&m.material.as_str()) {
            used.push(&m.material);
        }
        for v in &m.vertices {
            let _ = writeln!(obj, "v {} {} {}", fixed6(v.x), fixed6(v.y), fixed6(v.z));
        }
        for t in &m.triangles {
            let _ = writeln!(obj, "f {} {} {}", t[0] as usize + base, t[1] as usize + base, t[2] as usize + base);
        }
        base += m.vertices.len();
    }
    let mut mtl = format!("# {GENERATOR}\n");
    for tag in used {
        let [r, g, b] = materials.kd(tag);
        let _ = writeln!(mtl, "newmtl {tag}\nKd {} {} {}\nillum 1\n", fixed6(r), fixed6(g), fixed6(b));
    }
    (obj, mtl)
}

pub fn write_stl(model: &RampModel) -> Vec<u8> {
    let solids: Vec<&TriMesh> = model.solids().collect();
    write_stl_solids(&solids)
}

/// Little-endian binary STL of all solids concatenated.
pub fn write_stl_solids(solids: &[&TriMesh]) -> Vec<u8> {
    let count: usize = solids.iter().map(|m| m.triangles.len()).sum();
    let mut out = Vec::with_capacity(84 + 50 * count);
    let mut header = [0u8; 80];
    let tag = format!("{GENERATOR} binary STL");
    let n = tag.len().min(80);
    header[..n].copy_from_slice(&tag.as_bytes()[..n]);
    out.extend_from_slice(&header);
    out.extend_from_slice(&(count as u32).to_le_bytes());
    for m in solids {
        for t in 0..m.triangles.len() {
            let [a, b, c] = m.triangle(t);
            let n = (b - a).cross(c - a);
            let len = n.norm();
            let n = if len > 0.0 { n * (1.0 / len) } else { crate::vec3::Vec3::new(0.0, 0.0, 1.0) };
            for v in [n, a, b, c] {
                for x in [v.x, v.y, v.z] {
                    out.extend_from_slice(&(x as f32).to_le_bytes());
                }
            }
            out.extend_from_slice(&[0, 0]);
        }
    }
    out
}

/// Sorts object keys recursively so serialization order is fixed.
pub fn canonicalize(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            let mut out = Map::new();
            for (k, v) in entries {
                out.insert(k, canonicalize(v));
            }
            Value::Object(out)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(canonicalize).collect()),
        other => other,
    }
}

/// Pretty, key-sorted JSON followed by a newline.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report types serialize");
    let mut s = serde_json::to_string_pretty(&canonicalize(v)).expect("values serialize");
    s.push('\n');
    s
}

pub fn write_report(report: &ComplianceReport) -> String {
    canonical_json(report)
}

#[derive(Serialize)]
struct Bounds {
    min: [f64; 3],
    max: [f64; 3],
}

#[derive(Serialize)]
struct SolidJson<'a> {
    name: &'a str,
    material: &'a str,
    vertices: Vec<f64>,
    indices: Vec<u32>,
    bounds: Bounds,
}

#[derive(Serialize)]
struct MeshJson<'a> {
    schema_version: u32,
    materials: std::collections::BTreeMap<&'a str, [f64; 3]>,
    solids: Vec<SolidJson<'a>>,
}

pub fn write_mesh_json(model: &RampModel, materials: &MaterialTable) -> String {
    let solids: Vec<&TriMesh> = model.solids().collect();
    write_mesh_json_solids(&solids, materials)
}

/// Flat vertex and index arrays per solid, ready for GPU buffers.
pub fn write_mesh_json_solids(solids: &[&TriMesh], materials: &MaterialTable) -> String {
    let doc = MeshJson {
        schema_version: MESH_SCHEMA_VERSION,
        materials: solids.iter().map(|m| (m.material.as_str(), materials.kd(&m.material))).collect(),
        solids: solids
            .iter()
            .map(|m| {
                let (lo, hi) = m.bounds();
                SolidJson {
                    name: &m.name,
                    material: &m.material,
                    vertices: m.vertices.iter().flat_map(|v| [v.x, v.y, v.z]).collect(),
                    indices: m.triangles.iter().flatten().copied().collect(),
                    bounds: Bounds {
                        min: [lo.x, lo.y, lo.z],
                        max: [hi.x, hi.y, hi.z],
                    },
                }
            })
            .collect(),
    };
    let mut s = serde_json::to_string(&doc).expect("mesh serializes");
    s.push('\n');
    s
}
