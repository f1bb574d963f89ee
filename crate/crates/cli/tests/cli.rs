use std::fs;
use std::process::{Command, Output};

use ffk_core::yangian::CenterJson;
use serde_json::Value;

fn ffk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffk"))
        .args(args)
        .env_remove("FFK_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn elem_sym_is_ci() {
    let out = ffk(&["ci-check", "--vars", "3", "--seq", "elem-sym"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "CI");
    assert_eq!(v["dim"], 0);
    assert_eq!(v["schema"], "ffk/1");
}

#[test]
fn yangian_level_one_dims() {
    let out = ffk(&["yangian", "--n", "2", "--p", "1", "--verify-ci"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["ci"]["diagonal"]["dim"], 0);
    assert_eq!(v["ci"]["graded"]["dim"], 2);
    assert_eq!(v["center"].as_array().unwrap().len(), 2);
}

#[test]
fn expectations_and_exit_codes() {
    assert_eq!(
        ffk(&["ci-check", "--seq", "shared-factor", "--expect", "not-ci"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        ffk(&["ci-check", "--seq", "shared-factor", "--expect", "ci"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(ffk(&["ci-check", "--seq", "no-such-sequence"]).status.code(), Some(1));
    assert_eq!(
        ffk(&["--budget", "5", "ci-check", "--vars", "4", "--seq", "elem-sym"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ffk(&["yangian", "--n", "3", "--p", "3"]).status.code(),
        Some(1),
        "sizes past the cap need --allow-large"
    );
}

#[test]
fn budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_ffk"))
        .args(["ci-check", "--vars", "4", "--seq", "elem-sym"])
        .env("FFK_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_json_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    fs::write(&p, "{\"vars\": [\n  \"x\",\n").unwrap();
    let out = ffk(&["ci-check", "--sequence", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn quotient_needs_cm_flag() {
    let dir = tempfile::tempdir().unwrap();
    let alg = dir.path().join("a.json");
    let seq = dir.path().join("s.json");
    fs::write(
        &alg,
        r#"{"vars":[{"name":"X","weight":1}],"relations":[[{"coeff":"1","exps":[3]}]]}"#,
    )
    .unwrap();
    fs::write(&seq, r#"{"vars":["X"],"polynomials":["X^2"]}"#).unwrap();
    let (a, s) = (alg.to_str().unwrap(), seq.to_str().unwrap());
    assert_eq!(
        ffk(&["ci-check", "--algebra", a, "--sequence", s]).status.code(),
        Some(1)
    );
    let out = ffk(&["ci-check", "--algebra", a, "--sequence", s, "--cm"]);
    assert_eq!(out.status.code(), Some(0));
    // k[X]/(X^3) has dimension 0, so one more element cannot cut it down
    assert_eq!(json(&out)["verdict"], "NotCI");
}

#[test]
fn koszul_table() {
    let out = ffk(&["koszul", "--seq", "squares", "--cutoff", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "ci-consistent");
    assert_eq!(v["cutoff"], 6);
    let out = ffk(&["koszul", "--seq", "shared-factor", "--expect", "ci"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn casimir_freeness() {
    let out = ffk(&["freeness", "--seq", "sl2-casimir", "--cutoff", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["complement_dims"], serde_json::json!([1, 3, 5, 7, 9, 11, 13]));
    assert_eq!(v["hilbert_ok"], true);
}

#[test]
fn emitted_center_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("center.json");
    let out = ffk(&[
        "current",
        "--n",
        "2",
        "--m",
        "1",
        "--emit-center",
        p.to_str().unwrap(),
        "--freeness",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let src = fs::read_to_string(&p).unwrap();
    let c: CenterJson = serde_json::from_str(&src).unwrap();
    assert_eq!(c.family, "current");
    assert_eq!(c.center.len(), 2);
    assert_eq!(serde_json::to_string_pretty(&c).unwrap() + "\n", src);
    assert_eq!(json(&out)["freeness"]["pi_bijective_up_to"], 3);
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["yangian", "--n", "2", "--p", "2", "--verify-ci"][..],
        &["current", "--n", "2", "--m", "2", "--verify-ci"][..],
        &["koszul", "--seq", "elem-sym-3"][..],
    ] {
        let a = ffk(args);
        let b = ffk(args);
        assert_eq!(a.stdout, b.stdout);
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn current_level_two_replay_fails() {
    let out = ffk(&["current", "--n", "2", "--m", "2", "--verify-ci", "--expect", "ci"]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["ci"]["diagonal"]["dim"], 1);
    assert_eq!(v["ci"]["graded"]["dim"], 4);
    assert_eq!(v["ci"]["induction"][0]["replay_matches"], false);
}

#[test]
fn suite_subset() {
    let out = ffk(&["--format", "text", "suite", "--only", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8_lossy(&out.stdout);
    assert_eq!(s.lines().filter(|l| l.starts_with("PASS")).count(), 2);
}
