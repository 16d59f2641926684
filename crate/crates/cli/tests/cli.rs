use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn rampgen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rampgen"))
        .args(args)
        .env_remove("RAMPGEN_RULES")
        .env_remove("RAMPGEN_MATERIALS")
        .output()
        .unwrap()
}

fn files(dir: &Path) -> Vec<String> {
    let mut v: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    v.sort();
    v
}

#[test]
fn compliant_generation_exits_zero_and_writes_everything() {
    let out = tempfile::tempdir().unwrap();
    let env = fixtures().join("trial1.json");
    let o = rampgen(&["generate", "--env", env.to_str().unwrap(), "--out", out.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        files(out.path()),
        ["mesh.json", "ramp.mtl", "ramp.obj", "ramp.stl", "report.json", "timing.json"]
    );
    let report = std::fs::read_to_string(out.path().join("report.json")).unwrap();
    assert!(report.ends_with("}\n"));
    assert!(!report.contains("\"total\""), "timing must stay out of the report");
}

#[test]
fn format_selection_keeps_the_report() {
    let out = tempfile::tempdir().unwrap();
    let env = fixtures().join("trial1.json");
    let o = rampgen(&[
        "generate",
        "--env",
        env.to_str().unwrap(),
        "--out",
        out.path().to_str().unwrap(),
        "--formats",
        "stl",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(files(out.path()), ["ramp.stl", "report.json", "timing.json"]);
}

#[test]
fn infeasible_site_exits_two_with_a_report() {
    let out = tempfile::tempdir().unwrap();
    let env = fixtures().join("sealed.json");
    let o = rampgen(&["generate", "--env", env.to_str().unwrap(), "--out", out.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(files(out.path()), ["report.json", "timing.json"]);
    let r: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(r["stage_score"], 1);
    assert!(!r["feasibility_message"].as_str().unwrap().is_empty());
}

#[test]
fn bad_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"boundary\": [").unwrap();
    let o = rampgen(&["generate", "--env", bad.to_str().unwrap(), "--out", dir.path().join("o").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    let o = rampgen(&["generate", "--env", "/nonexistent/site.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn single_row_batch_matches_generate() {
    let dir = tempfile::tempdir().unwrap();
    let site = fixtures().join("trial2.json");
    let params = dir.path().join("params.json");
    std::fs::write(&params, r#"{"railing": {"type": "double-rounded"}}"#).unwrap();
    let manifest = dir.path().join("manifest.json");
    let case = serde_json::json!({"cases": [{
        "id": "walls",
        "environment": {"file": site},
        "params": {"railing": {"type": "double-rounded"}},
        "expect": 4
    }]});
    std::fs::write(&manifest, case.to_string()).unwrap();

    let gen = dir.path().join("gen");
    let o = rampgen(&[
        "generate",
        "--env",
        site.to_str().unwrap(),
        "--params",
        params.to_str().unwrap(),
        "--out",
        gen.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let batch = dir.path().join("batch");
    let o = rampgen(&["batch", "--manifest", manifest.to_str().unwrap(), "--out", batch.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    for f in ["report.json", "ramp.obj", "ramp.mtl", "ramp.stl", "mesh.json"] {
        assert_eq!(
            std::fs::read(gen.join(f)).unwrap(),
            std::fs::read(batch.join("walls").join(f)).unwrap(),
            "{f} differs"
        );
    }
    assert!(batch.join("summary.json").exists());
}

#[test]
fn batch_with_an_unmet_expectation_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("manifest.json");
    let case = serde_json::json!({"cases": [
        {"id": "sealed", "environment": {"file": fixtures().join("sealed.json")}, "expect": 4}
    ]});
    std::fs::write(&manifest, case.to_string()).unwrap();
    let o = rampgen(&["batch", "--manifest", manifest.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stdout).contains("sealed"));
}
