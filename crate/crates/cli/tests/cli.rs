use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use pbr_core::format::{parse_deformed, parse_pbr};
use pbr_core::{compose, Pbr};
use tempfile::TempDir;

fn pbr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbr")).args(args).output().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path: PathBuf = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_code(o: &Output) -> String {
    let v: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert!(v["detail"].is_string());
    v["error"].as_str().unwrap().to_string()
}

const ALPHA: &str = r#"{"domain": ["x"], "codomain": ["y"], "edges": [["x", "d", "y", "c"], ["y", "c", "y", "c"]]}"#;
const BETA: &str = r#"{"domain": ["y"], "codomain": ["z"], "edges": [["y", "d", "z", "c"], ["z", "c", "y", "d"]]}"#;
const IDENTITY_X: &str =
    r#"{"domain": ["x"], "codomain": ["x"], "edges": [["x", "d", "x", "c"], ["x", "c", "x", "d"]]}"#;
const E_HAT: &str = r#"{"domain": ["x"], "codomain": ["x"], "edges": [["x", "d", "x", "c"]]}"#;

#[test]
fn compose_with_identity_returns_input() {
    let dir = TempDir::new().unwrap();
    let (a, e) = (write(&dir, "a.json", ALPHA), write(&dir, "e.json", IDENTITY_X));
    let o = pbr(&["compose", &a, &e]);
    assert!(o.status.success());
    assert_eq!(parse_pbr(&stdout(&o)).unwrap(), parse_pbr(ALPHA).unwrap());
}

#[test]
fn compose_orders() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (write(&dir, "a.json", ALPHA), write(&dir, "b.json", BETA));
    let expected = compose(&parse_pbr(BETA).unwrap(), &parse_pbr(ALPHA).unwrap()).unwrap();
    let o = pbr(&["compose", &b, &a]);
    assert_eq!(parse_pbr(&stdout(&o)).unwrap(), expected);
    let out = dir.path().join("ba.json");
    let o = pbr(&["compose", "--left-to-right", &a, &b, "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(parse_pbr(&fs::read_to_string(out).unwrap()).unwrap(), expected);
}

#[test]
fn shape_mismatch_exits_3() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (write(&dir, "a.json", ALPHA), write(&dir, "b.json", BETA));
    let o = pbr(&["compose", &a, &b]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(error_code(&o), "incomposable_shapes");
}

#[test]
fn malformed_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(
        &dir,
        "bad.json",
        r#"{"domain": [], "codomain": [], "edges": [], "extra": 0}"#,
    );
    let o = pbr(&["render", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_code(&o), "parse");
    let dangling = write(
        &dir,
        "d.json",
        r#"{"domain": ["x"], "codomain": [], "edges": [["q", "d", "x", "d"]]}"#,
    );
    let o = pbr(&["factor", &dangling]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_code(&o), "dangling_edge_endpoint");
    let o = pbr(&["factor", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_code(&o), "io");
    let o = pbr(&["check", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_code(&o), "usage");
}

#[test]
fn checks_exit_0_or_1() {
    let dir = TempDir::new().unwrap();
    let (eh, id) = (write(&dir, "eh.json", E_HAT), write(&dir, "id.json", IDENTITY_X));
    let a = write(&dir, "a.json", ALPHA);
    for (flag, file, code) in [
        ("--pure", &eh, 0),
        ("--pure", &id, 0),
        ("--pure", &a, 1),
        ("--in-e-hat-subcategory", &eh, 0),
        ("--in-e-hat-subcategory", &id, 1),
        ("--left-polarized", &id, 0),
        ("--right-polarized", &id, 0),
        ("--oriented-brauer", &eh, 0),
        ("--oriented-brauer", &a, 1),
        ("--oriented-partial-brauer", &eh, 0),
        ("--planar", &eh, 0),
        ("--planar", &id, 1),
    ] {
        let o = pbr(&["check", flag, file]);
        assert_eq!(o.status.code(), Some(code), "{flag} {file}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["holds"], code == 0);
    }
}

#[test]
fn deform_compose_counts_cycles() {
    let dir = TempDir::new().unwrap();
    let a = write(
        &dir,
        "a.json",
        r#"{"domain": [], "codomain": ["y"], "edges": [["y", "c", "y", "c"]], "exponent": 2}"#,
    );
    let b = write(
        &dir,
        "b.json",
        r#"{"domain": ["y"], "codomain": [], "edges": [["y", "d", "y", "d"]]}"#,
    );
    let o = pbr(&["deform-compose", &b, &a]);
    assert!(o.status.success());
    let m = parse_deformed(&stdout(&o)).unwrap();
    assert_eq!(m.exponent, 3);
    assert_eq!(m.pbr, Pbr::empty(vec![], vec![]).unwrap());
}

#[test]
fn factor_and_embeddings() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", ALPHA);
    let o = pbr(&["factor", &a]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let part = |k: &str| parse_pbr(&v[k].to_string()).unwrap();
    let recomposed = compose(&part("left"), &compose(&part("pure"), &part("right")).unwrap()).unwrap();
    assert_eq!(recomposed, parse_pbr(ALPHA).unwrap());

    let rel = write(
        &dir,
        "r.json",
        r#"{"domain": ["x"], "codomain": ["x"], "pairs": [["x", "x"]]}"#,
    );
    let o = pbr(&["embed-phi1", &rel]);
    assert_eq!(parse_pbr(&stdout(&o)).unwrap(), parse_pbr(E_HAT).unwrap());
    let o = pbr(&["embed-phi2", &rel]);
    assert_eq!(parse_pbr(&stdout(&o)).unwrap(), parse_pbr(IDENTITY_X).unwrap());

    let part = write(
        &dir,
        "p.json",
        r#"{"domain": ["x"], "codomain": ["x"], "blocks": [[["x", "d"], ["x", "c"]]], "exponent": 1}"#,
    );
    let o = pbr(&["embed-psi", &part]);
    let m = parse_deformed(&stdout(&o)).unwrap();
    assert_eq!(m.pbr, Pbr::identity_bar(&["x".to_string()]).unwrap());
    assert_eq!(m.exponent, 1);
}

#[test]
fn render_emits_dot() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", ALPHA);
    let o = pbr(&["render", &a]);
    let s = stdout(&o);
    assert!(s.starts_with("digraph pbr {"));
    assert!(s.contains("d0 -> c0;") && s.contains("c0 -> c0;"));
}

#[test]
fn experiment_writes_csv() {
    let o = pbr(&[
        "experiment",
        "--mode",
        "pbr-pair",
        "--sizes",
        "8,16,32,64",
        "--samples",
        "1000",
        "--seed",
        "42",
    ]);
    assert!(o.status.success());
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "mode,n,trials,full_count,fraction,ci_low,ci_high,seed");
    assert_eq!(lines.len(), 5);
    assert!(lines[1..]
        .iter()
        .all(|l| l.starts_with("pbr-pair,") && l.ends_with(",42")));
    let again = pbr(&[
        "experiment",
        "--mode",
        "pbr-pair",
        "--sizes",
        "8,16,32,64",
        "--samples",
        "1000",
        "--seed",
        "42",
    ]);
    assert_eq!(stdout(&again), s);

    let o = pbr(&["experiment", "--mode", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    let o = pbr(&["experiment", "--samples", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_code(&o), "invalid_config");
}
