use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mparity"))
}

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad report: {e}\n{}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap()
}

#[test]
fn verify_algebra_default_passes_index_table() {
    let out = run(&["verify-algebra", "--cases", "20"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let r = json(&out);
    assert_eq!(r["tool"], "mparity");
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(r["scenario_hash"].as_str().unwrap().len(), 64);
    let table = check(&r, "index_table");
    assert_eq!(table["cases"], 16);
    assert_eq!(table["passed"], true);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn verify_algebra_is_deterministic() {
    let a = run(&["verify-algebra", "--seed", "11", "--cases", "10"]);
    let b = run(&["verify-algebra", "--seed", "11", "--cases", "10"]);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["verify-algebra", "--seed", "12", "--cases", "10"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn injected_wedge_fault_names_the_law() {
    let out = run(&["verify-algebra", "--cases", "10", "--inject-fault", "wedge-sign"]);
    assert_eq!(code(&out), 1);
    let r = json(&out);
    assert_eq!(r["passed"], false);
    let failing: Vec<&str> =
        r["checks"].as_array().unwrap().iter().filter(|c| c["passed"] == false).map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(failing, ["graded_commutativity"]);
}

#[test]
fn report_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("nested/report.json");
    let out = run(&["verify-algebra", "--cases", "5", "--report", file.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read(&file).unwrap(), out.stdout);
}

#[test]
fn plane_wave_is_exactly_covariant() {
    let out = run(&["verify-maxwell", scenario("plane_wave.json").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    let field = &r["fields"][0];
    assert_eq!(field["exact"], true);
    for law in field["laws"].as_array().unwrap() {
        assert_eq!(law["residual"], 0.0, "{law}");
    }
    let names: Vec<&str> = field["covariance"].as_array().unwrap().iter().map(|c| c["transform"].as_str().unwrap()).collect();
    assert_eq!(names, ["T", "boosted-TS"]);
    assert!(field["covariance"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn coulomb_refines_at_second_order() {
    let out = run(&["verify-maxwell", scenario("coulomb.json").to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let r = json(&out);
    let field = &r["fields"][0];
    assert_eq!(field["exact"], false);
    let mut ratios = 0;
    for law in field["laws"].as_array().unwrap() {
        if let Some(ratio) = law["refinement_ratio"].as_f64() {
            assert!((ratio - 4.0).abs() < 0.05, "{law}");
            ratios += 1;
        }
    }
    assert!(ratios >= 2);
}

#[test]
fn field_file_with_wrong_parity_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "field.json", r#"{"degree": 2, "parity": "oe", "components": {"12": [[[0,0,0,0], "1"]]}}"#);
    let s = write(dir.path(), "s.json", r#"{"name": "mismatch", "scheme": 1, "fields": [{"kind": "file", "path": "field.json"}]}"#);
    let out = run(&["verify-maxwell", s.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("parity"));
}

#[test]
fn malformed_scenario_reports_line_and_key() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "bad.json", "{\n  \"name\": \"x\",\n  \"integration\": {\"steps\": \"many\"}\n}\n");
    let out = run(&["verify-maxwell", s.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains(":3:"), "{err}");
    assert!(err.contains("integration.steps"), "{err}");
}

#[test]
fn gyration_orbit_closes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["simulate", scenario("gyration.json").to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    let t = &r["particles"][0]["trajectory"];
    let radius = t["orbit"]["mean_radius"].as_f64().unwrap();
    // ω = eB/m = 1 and the transverse speed is 0.75
    assert!((radius - 0.75).abs() < 1e-9, "{radius}");
    assert!(t["orbit"]["closure"].as_f64().unwrap() < 1e-9);
    assert!(t["orbit"]["radius_spread"].as_f64().unwrap() < 1e-9);
    assert!(t["max_norm_drift"].as_f64().unwrap() < 1e-12);
    let csv = std::fs::read_to_string(dir.path().join(t["csv"].as_str().unwrap())).unwrap();
    assert!(csv.starts_with("s,x0,x1,x2,x3,u0,u1,u2,u3,pi0,pi1,pi2,pi3,norm_drift\n"));
    assert_eq!(csv.lines().count(), 4002);
}

#[test]
fn zero_field_moves_in_straight_lines() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["simulate", scenario("zero_field.json").to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    for p in r["particles"].as_array().unwrap() {
        let t = &p["trajectory"];
        assert!(t["orbit"]["chord_deviation"].as_f64().unwrap() < 1e-12, "{p}");
        assert!(t["max_norm_drift"].as_f64().unwrap() < 1e-12, "{p}");
        assert!(dir.path().join(t["csv"].as_str().unwrap()).exists());
    }
}

#[test]
fn bad_particle_is_recorded_and_run_continues() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(
        dir.path(),
        "two.json",
        r#"{"name": "two", "particles": [
            {"name": "good", "mass": 1, "charge": 1, "scheme": "feynman", "start": {"x": [0,0,0,0], "u": [1,0,0,0]}},
            {"name": "bad", "mass": 1, "charge": 1, "scheme": "feynman", "start": {"x": [0,0,0,0], "u": [0.5,1,0,0]}}
        ], "integration": {"steps": 50}}"#,
    );
    let out = run(&["simulate", s.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert!(r["particles"][0]["trajectory"].is_object());
    assert!(r["particles"][1]["error"].as_str().unwrap().contains("time"));
    assert!(dir.path().join("two_out/good.csv").exists());
}

#[test]
fn feynman_conjugate_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "conjugate",
        scenario("gyration.json").to_str().unwrap(),
        "--mode",
        "feynman",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    let p = &r["particles"][0];
    assert!(p["transformed"]["max_el_residual"].as_f64().unwrap() < 1e-9);
    assert!(p["involution_error"].as_f64().unwrap() < 1e-12);
    assert!(dir.path().join("electron_feynman.csv").exists());
    assert!(dir.path().join("electron_original.csv").exists());
}

#[test]
fn dirac_reflection_by_t_is_future_directed() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["conjugate", scenario("dirac.json").to_str().unwrap(), "--mode", "dirac", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let r = json(&out);
    assert_eq!(r["transform"], "T");
    let t = &r["particles"][0]["transformed"];
    assert_eq!(t["future_directed"], true);
    assert!(t["final_state"]["u"][0].as_f64().unwrap() > 0.0);
    let csv = std::fs::read_to_string(dir.path().join("electron_dirac_T.csv")).unwrap();
    for line in csv.lines().skip(1) {
        let u0: f64 = line.split(',').nth(5).unwrap().parse().unwrap();
        assert!(u0 > 0.0);
    }
}

#[test]
fn dirac_mode_rejects_feynman_particles() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(
        dir.path(),
        "s.json",
        r#"{"name": "wrong", "scheme": 2, "particles": [
            {"mass": 1, "charge": 1, "scheme": "feynman", "start": {"x": [0,0,0,0], "u": [1,0,0,0]}}
        ]}"#,
    );
    let out = run(&["conjugate", s.to_str().unwrap(), "--mode", "dirac"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
}

#[test]
fn dirac_mode_rejects_time_preserving_transform() {
    let out = run(&["conjugate", scenario("dirac.json").to_str().unwrap(), "--mode", "dirac", "--transform", "S"]);
    assert_eq!(code(&out), 2);
}
