mod oracles;

use oracles::{closed_manifold, mesh_json_counts, parse_obj, parse_stl, soup_of, stl_volume, volume};
use rampgen_core::compliance::RuleSet;
use rampgen_core::env::parse_environment;
use rampgen_core::export::{write_mesh_json, write_obj, write_obj_solids, write_stl, write_stl_solids, MaterialTable};
use rampgen_core::geometry::mesh::{axis_box, meshes_intersect};
use rampgen_core::geometry::{RampModel, SupportStatus};
use rampgen_core::params::RampParams;
use rampgen_core::pipeline::generate;
use rampgen_core::vec3::Vec3;

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn model(name: &str, params: &RampParams) -> RampModel {
    let env = parse_environment(&fixture(name)).unwrap();
    let g = generate(&env, params, &RuleSet::default());
    assert_eq!(g.score(), 4, "{name}: {}", g.report.feasibility_message);
    g.model.unwrap()
}

fn variants() -> Vec<(&'static str, RampParams)> {
    let mut out = vec![];
    for name in ["trial1.json", "trial2.json", "trial3.json"] {
        out.push((name, RampParams::default()));
    }
    for kind in ["single-square", "double-rounded"] {
        let p: RampParams = serde_json::from_str(&format!(r#"{{"railing": {{"type": "{kind}"}}}}"#)).unwrap();
        out.push(("trial2.json", p));
    }
    out
}

#[test]
fn every_solid_is_closed_with_positive_volume() {
    for (name, params) in variants() {
        let m = model(name, &params);
        for s in m.solids() {
            let soup = soup_of(s);
            assert!(closed_manifold(&soup), "{name}: {} is not a closed manifold", s.name);
            let v = volume(&soup);
            assert!(v > 0.0, "{name}: {} has volume {v}", s.name);
            assert!((v - s.signed_volume()).abs() <= 1e-9 * v.abs().max(1.0));
        }
    }
}

#[test]
fn formats_agree_per_solid() {
    let mats = MaterialTable::default();
    for (name, params) in variants() {
        let m = model(name, &params);
        let solids: Vec<_> = m.solids().collect();

        let (obj, mtl) = write_obj(&m, &mats);
        let parsed = parse_obj(&obj).unwrap();
        assert_eq!(parsed.len(), solids.len(), "{name}");
        for ((soup, tag), s) in parsed.iter().zip(&solids) {
            assert_eq!(soup.name, s.name);
            assert_eq!(tag, &s.material);
            assert_eq!(soup.verts.len(), s.vertices.len());
            assert_eq!(soup.tris.len(), s.triangles.len());
            assert!(closed_manifold(soup), "{name}: OBJ {} reparsed open", s.name);
            assert!(mtl.contains(&format!("newmtl {}", s.material)));
            // six decimals are enough to keep the volume close
            let v = s.signed_volume();
            assert!((volume(soup) - v).abs() <= 1e-4 * v);
        }

        let stl = write_stl(&m);
        let (header, tris) = parse_stl(&stl).unwrap();
        assert!(header.contains("rampgen"));
        assert_eq!(tris.len(), m.triangle_count());
        let total: f64 = solids.iter().map(|s| s.signed_volume()).sum();
        let rel = (stl_volume(&tris) - total).abs() / total;
        assert!(rel <= 1e-4, "{name}: STL volume off by {rel:e}");

        let counts = mesh_json_counts(&write_mesh_json(&m, &mats)).unwrap();
        assert_eq!(counts.len(), solids.len());
        for ((n, mat, nv, nt), s) in counts.iter().zip(&solids) {
            assert_eq!((n, mat, *nv, *nt), (&s.name, &s.material, s.vertices.len(), s.triangles.len()));
        }
    }
}

#[test]
fn box_artifacts() {
    let b = axis_box("box", "concrete", Vec3::new(0.0, 0.0, 0.0), Vec3::new(1.0, 2.0, 3.0));
    let stl = write_stl_solids(&[&b]);
    assert_eq!(stl.len(), 80 + 4 + 12 * 50);
    let (_, tris) = parse_stl(&stl).unwrap();
    assert!((stl_volume(&tris) - 6.0).abs() < 1e-6);
    let (obj, _) = write_obj_solids(&[&b], &MaterialTable::default());
    let parsed = parse_obj(&obj).unwrap();
    assert_eq!((parsed[0].0.verts.len(), parsed[0].0.tris.len()), (8, 12));
    assert_eq!(obj.matches("\no ").count(), 1);
    assert_eq!(write_stl_solids(&[]).len(), 84);
}

#[test]
fn disabled_supports_emit_no_objects() {
    let p: RampParams = serde_json::from_str(r#"{"supports": {"density": 0}}"#).unwrap();
    let m = model("trial2.json", &p);
    assert!(m.supports.is_empty());
    let (obj, _) = write_obj(&m, &MaterialTable::default());
    assert!(!obj.contains("o support"));
}

#[test]
fn railings_on_both_sides_of_the_strip() {
    let m = model("trial3.json", &RampParams::default());
    let (lo, hi) = m.deck.bounds();
    let mid = 0.5 * (lo.y + hi.y);
    let left = m.railings.iter().any(|r| r.bounds().0.y > mid);
    let right = m.railings.iter().any(|r| r.bounds().1.y < mid);
    assert!(left && right, "strip railings are missing a side");
}

#[test]
fn supports_stay_clear_of_other_solids() {
    for (name, params) in variants() {
        let m = model(name, &params);
        for (s, log) in m.supports.iter().zip(m.support_log.iter().filter(|l| {
            matches!(l.status, SupportStatus::Placed | SupportStatus::Shifted)
        })) {
            assert!(log.height > 0.0);
            for r in &m.railings {
                assert!(!meshes_intersect(s, r, 1e-6), "{name}: {} hits {}", s.name, r.name);
            }
        }
    }
}
