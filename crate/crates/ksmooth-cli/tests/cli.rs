use std::io::Write;
use std::process::{Command, Output};

fn write_file(dir: &tempfile::TempDir, name: &str, contents: &str) -> std::path::PathBuf {
    let path = dir.path().join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path
}

fn ksmooth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ksmooth"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const DIAG_HALF: &str = r#"{
    "matrix": [["1","0"],["0","1/2"]],
    "domain": {"type":"linf","dim":2},
    "codomain": {"type":"linf","dim":2}
}"#;

const PROJECTION: &str = r#"{
    "matrix": [[1,0,0],[0,1,0]],
    "domain": {"type":"linf","dim":3},
    "codomain": {"type":"linf","dim":2}
}"#;

#[test]
fn op_smoothness_diag() {
    let dir = tempfile::tempdir().unwrap();
    let op = write_file(&dir, "t.json", DIAG_HALF);
    let out = ksmooth(&["op-smoothness", "--op", op.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("order: 2"));
}

#[test]
fn op_norm_and_mt() {
    let dir = tempfile::tempdir().unwrap();
    let op = write_file(&dir, "t.json", DIAG_HALF);
    let out = ksmooth(&["op-norm", "--op", op.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("norm: 1"));
    let out = ksmooth(&["op-mt", "--op", op.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["attaining_vertices"].as_array().unwrap().len(), 4);
}

#[test]
fn op_classify_projection() {
    let dir = tempfile::tempdir().unwrap();
    let op = write_file(&dir, "t.json", PROJECTION);
    let out = ksmooth(&["op-classify", "--op", op.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("case: IV"), "{text}");
    assert!(text.contains("computed order: 6"));
    assert!(text.contains("consistent: true"));
}

#[test]
fn op_extreme_agreement() {
    let dir = tempfile::tempdir().unwrap();
    let op = write_file(&dir, "t.json", PROJECTION);
    let out = ksmooth(&["op-extreme", "--op", op.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("extreme: true"));
    assert!(text.contains("criterion agrees: true"));
}

#[test]
fn space_validate_and_dual() {
    let dir = tempfile::tempdir().unwrap();
    let sp = write_file(
        &dir,
        "s.json",
        r#"{"type":"polyhedral","dim":2,"vertices":[["2","1"],["2","-1"],["-2","-1"],["-2","1"]]}"#,
    );
    let out = ksmooth(&["space-validate", "--space", sp.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("vertices: 4"));
    let out = ksmooth(&["space-dual", "--space", sp.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
}

#[test]
fn point_smoothness_square_corner() {
    let dir = tempfile::tempdir().unwrap();
    let sp = write_file(&dir, "s.json", r#"{"type":"linf","dim":2}"#);
    let out = ksmooth(&[
        "point-smoothness",
        "--space",
        sp.to_str().unwrap(),
        "--point",
        "1,1",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("order: 2"));
}

#[test]
fn bad_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let sp = write_file(&dir, "s.json", r#"{"type":"polyhedral","vertices":[["1","0"]]}"#);
    let out = ksmooth(&["space-validate", "--space", sp.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let zero = write_file(
        &dir,
        "z.json",
        r#"{"matrix":[[0,0],[0,0]],"domain":{"type":"linf","dim":2},"codomain":{"type":"linf","dim":2}}"#,
    );
    let out = ksmooth(&["op-norm", "--op", zero.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = ksmooth(&["op-norm", "--op", "/nonexistent/t.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_verb_rejected() {
    let out = ksmooth(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_small_suite() {
    let out = ksmooth(&["verify", "--theorem", "independence", "--seeds", "10", "--seed", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("10/10"));
    let out = ksmooth(&["verify", "--theorem", "no-such-theorem"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn op_bj_identity_reflection() {
    let dir = tempfile::tempdir().unwrap();
    let id = write_file(
        &dir,
        "id.json",
        r#"{"matrix":[[1,0],[0,1]],"domain":{"type":"linf","dim":2},"codomain":{"type":"linf","dim":2}}"#,
    );
    let refl = write_file(
        &dir,
        "r.json",
        r#"{"matrix":[[1,0],[0,-1]],"domain":{"type":"linf","dim":2},"codomain":{"type":"linf","dim":2}}"#,
    );
    let out = ksmooth(&[
        "op-bj",
        "--op",
        id.to_str().unwrap(),
        "--other",
        refl.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("orthogonal: true"));
}

#[test]
fn op_adjoint_round_trip_order() {
    let dir = tempfile::tempdir().unwrap();
    let op = write_file(&dir, "t.json", DIAG_HALF);
    let out = ksmooth(&["op-adjoint", "--op", op.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success());
    let adj = write_file(&dir, "adj.json", &stdout(&out));
    let a = ksmooth(&["op-smoothness", "--op", adj.to_str().unwrap()]);
    assert!(stdout(&a).contains("order: 2"));
}

#[test]
fn hilbert_smoothness_real() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_file(
        &dir,
        "h.json",
        r#"{"field":"real","matrix":[[1,0,0],[0,1,0],[0,0,"0.5"]]}"#,
    );
    let out = ksmooth(&["hilbert-smoothness", "--op", m.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("multiplicity: 2"));
    assert!(text.contains("order: 3"));
}

#[test]
fn hilbert_bj_cross_checked() {
    let dir = tempfile::tempdir().unwrap();
    let t = write_file(
        &dir,
        "t.json",
        r#"{"field":"real","matrix":[[1,0],[0,"0.5"]]}"#,
    );
    let a = write_file(
        &dir,
        "a.json",
        r#"{"field":"real","matrix":[[0,0],[0,1]]}"#,
    );
    let out = ksmooth(&[
        "hilbert-bj",
        "--op",
        t.to_str().unwrap(),
        "--other",
        a.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("orthogonal: true"));
}

#[test]
fn worked_example_flags_divergence() {
    let dir = tempfile::tempdir().unwrap();
    let op = write_file(
        &dir,
        "t.json",
        r#"{
            "matrix": [[0,1,0,1],[1,0,0,0]],
            "domain": {"type":"linf","dim":4},
            "codomain": {"type":"polyhedral","dim":2,
                "vertices":[["2","1"],["2","-1"],["-2","-1"],["-2","1"]]}
        }"#,
    );
    let out = ksmooth(&["op-mt", "--op", op.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("norm: 1"));
    assert!(text.contains("attaining extreme points: 16"));
    assert!(text.contains("note:"), "{text}");
    let out = ksmooth(&["op-smoothness", "--op", op.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["order"], 7);
    assert!(v["note"].as_str().unwrap().contains("16"));
}

#[test]
fn scope_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let sp = write_file(&dir, "s.json", r#"{"type":"l1","dim":5}"#);
    let out = ksmooth(&["space-validate", "--space", sp.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_ksmooth"))
        .args(["space-validate", "--space", sp.to_str().unwrap()])
        .env("SMOOTH_SCOPE_MAX_DIM", "5")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("vertices: 10"));
}

#[test]
fn json_and_text_report_same_order() {
    let dir = tempfile::tempdir().unwrap();
    let op = write_file(&dir, "t.json", PROJECTION);
    let text = stdout(&ksmooth(&["op-smoothness", "--op", op.to_str().unwrap()]));
    let json_out = stdout(&ksmooth(&[
        "op-smoothness",
        "--op",
        op.to_str().unwrap(),
        "--format",
        "json",
    ]));
    let v: serde_json::Value = serde_json::from_str(&json_out).unwrap();
    assert!(text.contains(&format!("order: {}", v["order"])));
}
