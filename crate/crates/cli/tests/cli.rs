use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const APPB: &str = r#"{"alice_dims":[2],"bob_dims":[3],"alpha0":[1,0],"alpha1":[1,0],"beta0":[0.5,0.5,0],"beta1":[0.5,0,0.5]}"#;

// Full support everywhere; Δ(β₀, β₁) = 0.4.
const UNIFORM: &str = r#"{"alice_dims":[2],"bob_dims":[2],"alpha0":[0.5,0.5],"alpha1":[0.5,0.5],"beta0":[0.2,0.8],"beta1":[0.6,0.4]}"#;

const TWO_ROUNDS: &str = r#"{"alice_dims":[3,2],"bob_dims":[2,3],
  "alpha0":[0.1,0.2,0.1,0.2,0.3,0.1],"alpha1":[0.3,0.1,0.1,0.1,0.2,0.2],
  "beta0":[0.2,0.1,0.1,0.3,0.2,0.1],"beta1":[0.1,0.3,0.2,0.1,0.1,0.2]}"#;

fn bccf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bccf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn validate_accepts_and_echoes() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "appb.json", APPB);
    let o = bccf(&["validate", s(&f)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let echoed: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(echoed["beta1"], serde_json::json!([0.5, 0.0, 0.5]));
}

#[test]
fn validate_error_codes() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (
            APPB.replace("\"alpha0\":[1,0]", "\"alpha0\":[0.9,0]"),
            2,
            "normalization",
        ),
        (
            APPB.replace("\"beta0\":[0.5,0.5,0]", "\"beta0\":[0.5,0.5]"),
            3,
            "dimension",
        ),
        (APPB.replace('}', ""), 6, "parse"),
        (
            APPB.replace("\"alpha0\":[1,0]", "\"alpha0\":[1.5,-0.5]"),
            9,
            "negative",
        ),
    ];
    for (i, (text, code, word)) in cases.iter().enumerate() {
        let f = write(&dir, &format!("bad{i}.json"), text);
        let o = bccf(&["validate", s(&f)]);
        assert_eq!(o.status.code(), Some(*code), "case {i}: {}", stderr(&o));
        assert!(stderr(&o).contains(word), "case {i}: {}", stderr(&o));
    }
}

#[test]
fn missing_file_is_io_error() {
    let o = bccf(&["analyze", "/nonexistent/protocol.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("io"));
}

#[test]
fn analyze_three_quarters() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "appb.json", APPB);
    let json = dir.path().join("out/report.json");
    let o = bccf(&["analyze", s(&f), "--mode", "both", "--json", s(&json)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("quantum (primal)   alice→0 0.750000000  alice→1 0.750000000  bob→0 0.750000000  bob→1 0.750000000"));
    assert!(text.contains("classical          alice→0 0.750000000  alice→1 0.750000000  bob→0 1.000000000  bob→1 1.000000000"));
    assert!(text.contains("perfect cheater bob"));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    let k = &v["report"]["kitaev"]["certified"];
    assert!((k[0].as_f64().unwrap() - 0.5625).abs() < 1e-6);
    assert_eq!(v["report"]["corollary"]["pass"], true);
}

#[test]
fn analyze_classical_mode() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "uniform.json", UNIFORM);
    let o = bccf(&["analyze", s(&f), "--mode", "classical"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(
        text.contains(
            "alice→0 0.700000000  alice→1 0.700000000  bob→0 1.000000000  bob→1 1.000000000"
        ),
        "{text}"
    );
    assert!(!text.contains("quantum"));
}

#[test]
fn analyze_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "two.json", TWO_ROUNDS);
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let oa = bccf(&["analyze", s(&f), "--seed", "7", "--json", s(&a)]);
    let ob = bccf(&["analyze", s(&f), "--seed", "7", "--json", s(&b)]);
    assert_eq!(oa.status.code(), Some(0), "{}", stderr(&oa));
    assert_eq!(oa.stdout, ob.stdout);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn unconverged_analysis_still_writes_report() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "two.json", TWO_ROUNDS);
    let json = dir.path().join("partial.json");
    let o = bccf(&["analyze", s(&f), "--max-iter", "1", "--json", s(&json)]);
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
    assert!(stdout(&o).contains("not converged"));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["report"]["quantum"]["converged"], false);
    assert!(v["report"]["kitaev"].is_null());
}

#[test]
fn pointgame_three_quarters() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "appb.json", APPB);
    let json = dir.path().join("game.json");
    let svg = dir.path().join("svg");
    let o = bccf(&["pointgame", s(&f), "--json", s(&json), "--svg", s(&svg)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("6 transitions"), "{text}");
    assert!(text.contains("final point (0.750000000, 0.750000000)"));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["moves"].as_array().unwrap().len(), 6);
    assert_eq!(v["kind"], "quantum");
    let picture = fs::read_to_string(svg.join("pointgame.svg")).unwrap();
    assert!(picture.starts_with("<svg"));
    assert_eq!(picture.matches("<g transform").count(), 7);
}

#[test]
fn pointgame_literal_schedule_is_longer() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "appb.json", APPB);
    let o = bccf(&["pointgame", s(&f), "--literal"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("12 transitions"), "{}", stdout(&o));
}

#[test]
fn classical_pair_on_full_support() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "uniform.json", UNIFORM);
    let json = dir.path().join("pair.json");
    let svg = dir.path().join("figs");
    let o = bccf(&[
        "pointgame",
        s(&f),
        "--variant",
        "classical",
        "--pair",
        "--json",
        s(&json),
        "--svg",
        s(&svg),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o)
            .matches("final point (1.000000000, 0.700000000)")
            .count(),
        2,
        "{}",
        stdout(&o)
    );
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    let fin: Vec<f64> = v["final"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    for (got, want) in fin.iter().zip([1.0, 1.0, 0.7, 0.7]) {
        assert!((got - want).abs() < 1e-9, "{fin:?}");
    }
    assert!(svg.join("pointgame-1.svg").exists() && svg.join("pointgame-2.svg").exists());
}

#[test]
fn classical_variant_on_two_rounds() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "two.json", TWO_ROUNDS);
    let o = bccf(&["pointgame", s(&f), "--variant", "classical", "--pair"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn quantum_pair_on_two_rounds() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "two.json", TWO_ROUNDS);
    let o = bccf(&["pointgame", s(&f), "--pair"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("pair final point"));
}

#[test]
fn demo_passes() {
    let o = bccf(&["demo", "three-quarters"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(!text.contains("FAIL"));
    assert!(text.contains("PASS point game has the six-transition schedule"));
    assert!(text.ends_with("all checks passed\n"));
}
