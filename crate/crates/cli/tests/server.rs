use axum::body::{to_bytes, Body};
use axum::http::{Request, StatusCode};
use serde_json::{json, Value};
use tower::ServiceExt;

use chomp_cli::server::{router, AppState};
use chomp_cli::{run, Cli};
use clap::Parser;

async fn call(method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    send(router(AppState::new(20), None), method, uri, body).await
}

async fn send(app: axum::Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let mut req = Request::builder().method(method).uri(uri);
    let body = match body {
        Some(v) => {
            req = req.header("content-type", "application/json");
            Body::from(v.to_string())
        }
        None => Body::empty(),
    };
    let resp = app.oneshot(req.body(body).unwrap()).await.unwrap();
    let status = resp.status();
    let bytes = to_bytes(resp.into_body(), usize::MAX).await.unwrap();
    let value = serde_json::from_slice(&bytes).unwrap_or(Value::Null);
    (status, value)
}

#[tokio::test]
async fn solve_small_position() {
    let (status, v) = call("GET", "/api/solve?rule=0,1&position=2,1", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["ordinal"], 1);
    assert_eq!(v["solutions"], json!([[]]));
}

#[tokio::test]
async fn solve_matches_cli_json() {
    let (_, http) = call("GET", "/api/solve?rule=0,1,3,2&position=4,2,1", None).await;
    let cli = Cli::parse_from(["chomp", "solve", "--rule", "0,1,3,2", "--position", "4,2,1", "--format", "json"]);
    let mut out = Vec::new();
    assert_eq!(run(cli, &mut out).unwrap(), 0);
    let from_cli: Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(http, from_cli);
}

#[tokio::test]
async fn normalize_scores() {
    let (status, v) = call("GET", "/api/rules/normalize?scores=10,20", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v, json!([0, 1]));
    let (status, _) = call("GET", "/api/rules/normalize?scores=1,1", None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn bad_syntax_is_400() {
    let (status, v) = call("GET", "/api/solve?rule=0,1&position=1,2", None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(v["error"].is_string());
}

#[tokio::test]
async fn table_respects_budget() {
    let (status, v) = call("GET", "/api/table?rule=0,1&volume=3", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["frontier"], 3);
    assert_eq!(v["entries"].as_array().unwrap().len(), 1 + 1 + 2 + 3);
    let (status, _) = call("GET", "/api/table?rule=0,1&volume=21", None).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn iso_endpoint() {
    let (status, v) = call("GET", "/api/iso?f=0,1,2&g=0,2,1&volume=6", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["outcome"], "counterexample");
    assert_eq!(v["minVolume"], 3);
    assert_eq!(v["witness"]["position"], json!([3]));
}

#[tokio::test]
async fn engine_only_game_runs_to_completion() {
    let (status, v) = call("POST", "/api/game", Some(json!({"rule": "0,1,2,3", "position": "3,1"}))).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    assert_eq!(v["finished"], true);
    assert_eq!(v["moves"].as_array().unwrap().len(), 4);
    assert_eq!(v["position"], json!([]));
    assert!(v["finalScores"].is_array());
}

#[tokio::test]
async fn human_game_flow() {
    let state = AppState::new(20);
    let app = router(state, None);
    let (status, v) = send(
        app.clone(),
        "POST",
        "/api/game",
        Some(json!({"rule": [10.0, 20.0], "position": [2, 1], "humanSeats": [1]})),
    )
    .await;
    assert_eq!(status, StatusCode::OK, "{v}");
    assert_eq!(v["toMove"], 1);
    let id = v["id"].as_u64().unwrap();

    let (status, _) = send(app.clone(), "POST", &format!("/api/game/{id}/move"), Some(json!({"row": 3, "col": 1}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);

    let (status, v) = send(app.clone(), "POST", &format!("/api/game/{id}/move"), Some(json!({"row": 1, "col": 2}))).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    // Engine at seat 2 replied; the human is to move again or the game is over.
    assert!(v["moves"].as_array().unwrap().len() >= 2 || v["finished"] == true);

    let (status, got) = send(app.clone(), "GET", &format!("/api/game/{id}"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(got, v);

    let (status, _) = send(app, "GET", "/api/game/9999", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn placeholder_index() {
    let app = router(AppState::new(5), None);
    let resp = app.oneshot(Request::get("/").body(Body::empty()).unwrap()).await.unwrap();
    assert_eq!(resp.status(), StatusCode::OK);
}
