use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn campaign(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("campaigns")
        .join(format!("{name}.json"))
}

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rcat-verify"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_json(name: &str, extra: &[&str]) -> (i32, Value) {
    let path = campaign(name);
    let mut args = vec!["run", path.to_str().unwrap(), "--format", "json"];
    args.extend_from_slice(extra);
    let out = verify(&args);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    (out.status.code().unwrap(), v)
}

fn check<'a>(report: &'a Value, id: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == id)
        .unwrap()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn restriction_laws_campaign_passes() {
    let path = campaign("restriction-laws");
    let out = verify(&["run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().last() == Some("PASS"), "{text}");
    assert!(text.contains("model finset"));
}

#[test]
fn moebius_is_certified_nontrivial() {
    let (code, r) = run_json("moebius", &[]);
    assert_eq!(code, 0);
    assert_eq!(r["verdict"], "PASS");
    assert_eq!(check(&r, "non-triviality")["verdict"], "PASS");
    assert_eq!(check(&r, "torsor")["verdict"], "PASS");
    assert!(
        check(&r, "non-triviality")["output"]["search_nodes"]["twisted"]
            .as_u64()
            .unwrap()
            > 0
    );
}

#[test]
fn heisenberg_lie_emits_the_bracket_table() {
    let (code, r) = run_json("heisenberg-lie", &[]);
    assert_eq!(code, 0);
    let lie = check(&r, "lie-bracket");
    assert_eq!(lie["verdict"], "PASS");
    let table = &lie["output"]["basis_brackets"]["H5"];
    assert_eq!(table[0][1], serde_json::json!([0, 0, 1]));
    assert_eq!(table[1][0], serde_json::json!([0, 0, 4]));
    assert_eq!(table[2][2], serde_json::json!([0, 0, 0]));
    let jacobi = lie["laws"]
        .as_array()
        .unwrap()
        .iter()
        .find(|l| l["law"].as_str().unwrap().ends_with("[w,[u,v]] = 0"))
        .unwrap();
    assert_eq!(jacobi["failures"], 0);
    assert!(jacobi["cases"].as_u64().unwrap() > 0);
}

#[test]
fn literal_flip_row_fails_with_exit_one() {
    let (code, r) = run_json("coordinate-table", &[]);
    assert_eq!(code, 1);
    let laws = check(&r, "coordinate-table")["laws"]
        .as_array()
        .unwrap()
        .clone();
    let failed: Vec<&str> = laws
        .iter()
        .filter(|l| l["failures"].as_u64().unwrap() > 0)
        .map(|l| l["law"].as_str().unwrap())
        .collect();
    assert_eq!(failed.len(), 1);
    assert!(failed[0].starts_with("H3: row c:"));
}

#[test]
fn reports_are_byte_identical_and_flags_override() {
    let path = campaign("restriction-laws");
    let report = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("laws-report.json");
    let a = verify(&[
        "run",
        path.to_str().unwrap(),
        "--format",
        "json",
        "--seed",
        "3",
    ]);
    let b = verify(&[
        "run",
        path.to_str().unwrap(),
        "--format",
        "json",
        "--seed",
        "3",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(std::fs::read(&report).unwrap(), a.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["config"]["seed"], 3);
    assert!(v["checks"][0].get("millis").is_none());
}

#[test]
fn skipped_checks_do_not_pass() {
    let p = scratch(
        "skip.json",
        r#"{"name": "s", "checks": ["tangent-axioms"], "config": {"model": "finset"}}"#,
    );
    let out = verify(&["run", p.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["checks"][0]["verdict"], "SKIPPED");
}

#[test]
fn describe_known_and_unknown_checks() {
    let out = verify(&["describe", "right-action"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("rq = π0 q"));
    let out = verify(&["describe", "eckmann-hilton"]);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("+_u = T(m)_u"));
    let out = verify(&["describe", "no-such-check"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .starts_with("UNKNOWN_CHECK"));
}

#[test]
fn parse_errors_carry_line_and_column() {
    let p = scratch(
        "broken.json",
        "{\n  \"name\": \"x\",\n  \"checks\": [\"gluing\",]\n}\n",
    );
    let out = verify(&["run", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.starts_with("PARSE_ERROR") && err.contains("line 3"),
        "{err}"
    );
}

#[test]
fn unknown_checks_in_a_campaign_are_rejected_before_running() {
    let p = scratch(
        "unknown.json",
        r#"{"name": "u", "checks": ["gluing", "frobnicate"]}"#,
    );
    let out = verify(&["run", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .starts_with("UNKNOWN_CHECK"));
}

#[test]
fn list_names_every_campaign_check() {
    let out = String::from_utf8(verify(&["list"]).stdout).unwrap();
    for name in [
        "restriction-laws",
        "moebius",
        "heisenberg-lie",
        "tangent-groups",
        "coordinate-table",
    ] {
        let c: Value =
            serde_json::from_str(&std::fs::read_to_string(campaign(name)).unwrap()).unwrap();
        for id in c["checks"].as_array().unwrap() {
            assert!(
                out.lines().any(|l| l.starts_with(id.as_str().unwrap())),
                "{id}"
            );
        }
    }
}
