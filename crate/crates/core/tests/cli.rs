use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn trifold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trifold"))
        .args(args)
        .output()
        .expect("run trifold")
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn build(dir: &Path, m: &str) -> String {
    let file = path(dir, &format!("layout{m}.json"));
    let out = trifold(&["build", "--m", m, "--out", &file]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    file
}

#[test]
fn check_reports_admissible_starts() {
    let dir = tempfile::tempdir().unwrap();
    let file = path(dir.path(), "fold.json");
    std::fs::write(&file, r#"{"lengths":[2,1,2,1.6,1.6]}"#).unwrap();
    let out = trifold(&["check", &file]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r["outputs"]["realizable"], true);
    assert_eq!(r["outputs"]["admissible_starts"], serde_json::json!([1]));
    assert_eq!(r["input_digest"].as_str().unwrap().len(), 64);

    std::fs::write(&file, r#"{"lengths":[10,1,1,1]}"#).unwrap();
    assert_eq!(
        report(&trifold(&["check", &file]))["outputs"]["realizable"],
        false
    );

    std::fs::write(&file, "{not json").unwrap();
    let out = trifold(&["check", &file]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn build_sizes_and_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    for (m, n) in [("1", 5), ("2", 10)] {
        let file = path(dir.path(), "l.json");
        let out = trifold(&["build", "--m", m, "--out", &file]);
        assert!(out.status.success());
        assert_eq!(report(&out)["outputs"]["n"], n);
        let layout: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
        assert_eq!(layout["lengths"].as_array().unwrap().len(), n);
    }
    assert_eq!(trifold(&["build", "--m", "0"]).status.code(), Some(2));
    assert_eq!(
        trifold(&["build", "--m", "1", "--fold-lengths", "1,2,1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn certify_meets_the_contract_for_one_and_two_gadgets() {
    let dir = tempfile::tempdir().unwrap();
    for (m, expect) in [("1", vec![vec![1i64]]), ("2", vec![vec![1, 0], vec![0, 1]])] {
        let layout = build(dir.path(), m);
        let cert_file = path(dir.path(), "cert.json");
        let out = trifold(&["certify", &layout, "--out", &cert_file]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stdout)
        );
        let cert: Value =
            serde_json::from_str(&std::fs::read_to_string(&cert_file).unwrap()).unwrap();
        let degree: Vec<Vec<i64>> = serde_json::from_value(cert["degree_matrix"].clone()).unwrap();
        let abs: Vec<Vec<i64>> = degree
            .iter()
            .map(|r| r.iter().map(|e| e.abs()).collect())
            .collect();
        assert_eq!(abs, expect);
        assert_eq!(cert["closure"]["verdict"], "found");
        assert_eq!(cert["closure"]["seed"], 7);
        assert_eq!(report(&out)["rng_seed"], 7);
    }
}

#[test]
fn certify_flags_overlapping_regions() {
    let dir = tempfile::tempdir().unwrap();
    let layout = build(dir.path(), "1");
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&layout).unwrap()).unwrap();
    // flip the moving side towards the base and pull the base apex down to the chord
    let side = doc["gadgets"][0]["side"].as_i64().unwrap();
    doc["gadgets"][0]["side"] = (-side).into();
    let pt = |v: &Value| (v[0].as_f64().unwrap(), v[1].as_f64().unwrap());
    let (a, d) = (
        pt(&doc["gadgets"][0]["anchors"][0]),
        pt(&doc["gadgets"][0]["anchors"][1]),
    );
    let apex = pt(&doc["base_vertices"][1]);
    let mid = ((a.0 + d.0) / 2.0, (a.1 + d.1) / 2.0);
    let len = ((apex.0 - mid.0).powi(2) + (apex.1 - mid.1).powi(2)).sqrt();
    let new = (
        mid.0 + 0.5 * (apex.0 - mid.0) / len,
        mid.1 + 0.5 * (apex.1 - mid.1) / len,
    );
    doc["base_vertices"][1] = serde_json::json!([new.0, new.1]);
    let far = pt(&doc["base_vertices"][0]);
    let dist = |p: (f64, f64), q: (f64, f64)| ((p.0 - q.0).powi(2) + (p.1 - q.1).powi(2)).sqrt();
    doc["lengths"][0] = dist(far, new).into();
    doc["lengths"][1] = dist(new, a).into();
    let bad = path(dir.path(), "bad.json");
    std::fs::write(&bad, doc.to_string()).unwrap();

    let out = trifold(&["certify", &bad]);
    assert_eq!(out.status.code(), Some(4));
    let cert = &report(&out)["outputs"];
    assert!(cert["profile"]["loops"][0]["crossing"].as_u64().unwrap() > 0);
    assert_eq!(cert["contract_met"], false);
}

#[test]
fn betti_on_the_loop_and_budget_exit() {
    let dir = tempfile::tempdir().unwrap();
    let layout = build(dir.path(), "1");
    let diagram = path(dir.path(), "dg.json");
    let out = trifold(&[
        "betti", &layout, "--mode", "loop", "--points", "120", "--out", &diagram,
    ]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r["outputs"]["betti"], serde_json::json!([1, 1]));
    assert_eq!(r["outputs"]["significant"], true);
    let dg: Value = serde_json::from_str(&std::fs::read_to_string(&diagram).unwrap()).unwrap();
    assert_eq!(dg["dims"].as_array().unwrap().len(), 2);

    let layout2 = build(dir.path(), "2");
    let out = trifold(&[
        "betti",
        &layout2,
        "--mode",
        "torus",
        "--max-dim",
        "2",
        "--budget",
        "100000",
    ]);
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stderr).contains("simplices"));
}

#[test]
fn render_frames() {
    let dir = tempfile::tempdir().unwrap();
    let layout = build(dir.path(), "1");
    let svg = |t: &str| {
        let out = trifold(&["render", &layout, "--t", t]);
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    let flat = svg("0");
    assert!(flat.starts_with("<svg"));
    assert_eq!(flat, svg("0"));
    assert_ne!(flat, svg("0.5"));

    let file = path(dir.path(), "frame.svg");
    assert!(trifold(&["render", &layout, "--t", "0.25", "--out", &file])
        .status
        .success());
    assert_eq!(std::fs::read_to_string(&file).unwrap(), svg("0.25"));

    let config = path(dir.path(), "square.json");
    std::fs::write(
        &config,
        r#"{"lengths":[1,1,1,1],"vertices":[[0,0],[1,0],[1,1],[0,1]]}"#,
    )
    .unwrap();
    assert!(trifold(&["render", &config]).status.success());
    std::fs::write(
        &config,
        r#"{"lengths":[1,1,1,1],"vertices":[[0,0],[2,0],[1,1],[0,1]]}"#,
    )
    .unwrap();
    assert_eq!(trifold(&["render", &config]).status.code(), Some(2));
}

#[test]
fn version_flag() {
    let out = trifold(&["--version"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains(env!("CARGO_PKG_VERSION")));
}
