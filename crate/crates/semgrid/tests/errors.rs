use std::process::Command;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use semgrid::server::router;
use semgrid::{Workspace, WorkspaceConfig};

fn fixtures() -> std::path::PathBuf {
    std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn config(dir: &std::path::Path) -> WorkspaceConfig {
    WorkspaceConfig {
        store_path: dir.join("store.nq"),
        shapes_dir: dir.join("shapes"),
        deterministic_ids: true,
        ..WorkspaceConfig::default()
    }
}

async fn post(app: &axum::Router, uri: &str, body: &str) -> (StatusCode, Value) {
    let req = Request::post(uri).body(Body::from(body.to_string())).unwrap();
    let res = app.clone().oneshot(req).await.unwrap();
    let status = res.status();
    let bytes = res.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap())
}

fn cli(dir: &std::path::Path, args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_semgrid"))
        .env("RUST_LOG", "off")
        .arg("--store")
        .arg(dir.join("store.nq"))
        .arg("--deterministic")
        .args(args)
        .output()
        .unwrap();
    let err: Value = serde_json::from_slice(&out.stderr).unwrap_or(Value::Null);
    (out.status.code().unwrap(), err)
}

#[tokio::test]
async fn http_statuses_follow_error_kinds() {
    let dir = tempfile::tempdir().unwrap();
    let app = router(Workspace::open(config(dir.path())).unwrap());

    let (status, body) = post(&app, "/dsep", "{not json").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["error"]["code"], "INVALID_JSON");

    let (status, body) = post(&app, "/identify", &json!({ "map": "urn:su:missing", "cause": "A", "effect": "B" }).to_string()).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(body["error"]["code"], "UNKNOWN_MAP");

    let scm: Value = serde_json::from_str(&std::fs::read_to_string(fixtures().join("scm/copy.json")).unwrap()).unwrap();
    let impossible = json!({ "scm": scm, "observe": { "X": "1", "Y": "0" }, "do": { "X": "0" }, "query": "Y" });
    let (status, body) = post(&app, "/whatif", &impossible.to_string()).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(body["error"]["code"], "ZERO_PROBABILITY_EVIDENCE");
}

#[test]
fn cli_exit_codes_and_error_json() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = cli(dir.path(), &["dsep", "--map"]);
    assert_eq!(code, 2);

    let (code, err) = cli(dir.path(), &["identify", "--map", "urn:su:missing", "--cause", "A", "--effect", "B"]);
    assert_eq!(code, 1);
    assert_eq!(err["error"]["code"], "UNKNOWN_MAP");

    let copy = fixtures().join("scm/copy.json");
    let (code, err) =
        cli(dir.path(), &["whatif", "--scm", copy.to_str().unwrap(), "--observe", "X=1,Y=0", "--do", "X=0", "--query", "Y"]);
    assert_eq!(code, 1);
    assert_eq!(err["error"]["code"], "ZERO_PROBABILITY_EVIDENCE");
}
