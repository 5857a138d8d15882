use std::time::Duration;

use axum::body::Body;
use axum::http::{header, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use taxman_service::{router, ServiceConfig};

fn app() -> Router {
    router(ServiceConfig::default()).unwrap()
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let mut req = Request::builder().method(method).uri(uri);
    let body = match body {
        Some(v) => {
            req = req.header(header::CONTENT_TYPE, "application/json");
            Body::from(v.to_string())
        }
        None => Body::empty(),
    };
    let resp = app.clone().oneshot(req.body(body).unwrap()).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = if bytes.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&bytes).unwrap()
    };
    (status, value)
}

async fn new_game(app: &Router, n: usize) -> (String, Value) {
    let (status, body) = call(app, "POST", "/games", Some(json!({ "n": n }))).await;
    assert_eq!(status, StatusCode::CREATED, "{body}");
    (body["id"].as_str().unwrap().to_string(), body["state"].clone())
}

fn ints(v: &Value) -> Vec<u64> {
    v.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
}

/// Scores plus the in-play sum make up the whole pot.
fn assert_conserved(state: &Value) {
    let n = state["n"].as_u64().unwrap();
    let in_play: u64 = ints(&state["in_play"]).iter().sum();
    let scores = state["player_score"].as_u64().unwrap() + state["taxman_score"].as_u64().unwrap();
    assert_eq!(scores + in_play, n * (n + 1) / 2, "{state}");
}

#[tokio::test]
async fn create_game_lists_legal_picks() {
    let app = app();
    let (_, state) = new_game(&app, 7).await;
    assert_eq!(ints(&state["legal_picks"]), vec![2, 3, 4, 5, 6, 7]);
    assert_eq!(ints(&state["in_play"]), (1..=7).collect::<Vec<_>>());
    assert_eq!(state["finished"], json!(false));
    assert_eq!(state["outcome"], Value::Null);
    assert_conserved(&state);
}

#[tokio::test]
async fn pot_of_one_is_over_at_once() {
    let app = app();
    let (_, state) = new_game(&app, 1).await;
    assert_eq!(ints(&state["legal_picks"]), Vec::<u64>::new());
    assert_eq!(state["finished"], json!(true));
    assert_eq!(state["outcome"], json!("loss"));
    assert_eq!(state["taxman_score"], json!(1));
}

#[tokio::test]
async fn invalid_sizes_are_rejected() {
    let app = app();
    for body in [json!({ "n": 0 }), json!({ "n": 10_001 }), json!({ "n": -3 }), json!({})] {
        let (status, err) = call(&app, "POST", "/games", Some(body)).await;
        assert_eq!(status, StatusCode::BAD_REQUEST);
        assert!(err["error"].is_string());
    }
}

#[tokio::test]
async fn picks_report_the_tax_and_finish_the_game() {
    let app = app();
    let (id, _) = new_game(&app, 7).await;
    let uri = format!("/games/{id}/pick");
    let (status, body) = call(&app, "POST", &uri, Some(json!({ "value": 7 }))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(ints(&body["taxed"]), vec![1]);
    assert_conserved(&body["state"]);
    let (_, body) = call(&app, "POST", &uri, Some(json!({ "value": 4 }))).await;
    assert_eq!(ints(&body["taxed"]), vec![2]);
    let (_, body) = call(&app, "POST", &uri, Some(json!({ "value": 6 }))).await;
    assert_eq!(ints(&body["taxed"]), vec![3]);
    let state = &body["state"];
    assert_eq!(state["finished"], json!(true));
    assert_eq!((state["player_score"].clone(), state["taxman_score"].clone()), (json!(17), json!(11)));
    assert_eq!(state["outcome"], json!("win"));
    assert_eq!(ints(&state["picks"]), vec![7, 4, 6]);
    assert_conserved(state);
}

#[tokio::test]
async fn illegal_picks_get_409_with_a_reason() {
    let app = app();
    let (id, _) = new_game(&app, 7).await;
    let uri = format!("/games/{id}/pick");
    let (status, body) = call(&app, "POST", &uri, Some(json!({ "value": 1 }))).await;
    assert_eq!((status, body["reason"].clone()), (StatusCode::CONFLICT, json!("no tax")));
    let (status, body) = call(&app, "POST", &uri, Some(json!({ "value": 99 }))).await;
    assert_eq!((status, body["reason"].clone()), (StatusCode::CONFLICT, json!("not in play")));
    call(&app, "POST", &uri, Some(json!({ "value": 7 }))).await;
    let (status, body) = call(&app, "POST", &uri, Some(json!({ "value": 7 }))).await;
    assert_eq!((status, body["reason"].clone()), (StatusCode::CONFLICT, json!("not in play")));
    let (status, _) = call(&app, "POST", &uri, Some(json!({ "pick": 7 }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn unknown_sessions_are_404() {
    let app = app();
    let (status, _) = call(&app, "POST", "/games/nope/pick", Some(json!({ "value": 2 }))).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) = call(&app, "GET", "/games/nope/hint", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn idle_sessions_expire() {
    let app = router(ServiceConfig {
        session_ttl: Duration::ZERO,
        ..ServiceConfig::default()
    })
    .unwrap();
    let (id, _) = new_game(&app, 5).await;
    let (status, _) = call(&app, "POST", &format!("/games/{id}/pick"), Some(json!({ "value": 5 }))).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn hints() {
    let app = app();
    let (id, _) = new_game(&app, 2).await;
    for strategy in ["born-free", "born-free-5", "fas-lower", "oracle"] {
        let (status, h) = call(&app, "GET", &format!("/games/{id}/hint?strategy={strategy}"), None).await;
        assert_eq!(status, StatusCode::OK, "{h}");
        assert_eq!(h["suggested_pick"], json!(2));
        assert_eq!(h["heuristic"], json!(strategy != "oracle"));
    }
    let (_, h) = call(&app, "GET", &format!("/games/{id}/hint"), None).await;
    assert_eq!(h["strategy"], json!("born-free"));
    let (status, _) = call(&app, "GET", &format!("/games/{id}/hint?strategy=greedy"), None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);

    call(&app, "POST", &format!("/games/{id}/pick"), Some(json!({ "value": 2 }))).await;
    let (status, h) = call(&app, "GET", &format!("/games/{id}/hint?strategy=oracle"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(h["suggested_pick"], Value::Null);
    assert_eq!(h["projected_final_score"], json!(2));
}

#[tokio::test]
async fn following_oracle_hints_at_13_scores_the_optimum() {
    let app = app();
    let (id, _) = new_game(&app, 13).await;
    let hint_uri = format!("/games/{id}/hint?strategy=oracle");
    let (_, first) = call(&app, "GET", &hint_uri, None).await;
    let projected = first["projected_final_score"].clone();
    let (_, bounds) = call(&app, "GET", "/bounds?n=13", None).await;
    assert_eq!(projected, bounds["optimal"]);
    let mut state = Value::Null;
    loop {
        let (_, h) = call(&app, "GET", &hint_uri, None).await;
        let Some(p) = h["suggested_pick"].as_u64() else { break };
        let (status, body) = call(&app, "POST", &format!("/games/{id}/pick"), Some(json!({ "value": p }))).await;
        assert_eq!(status, StatusCode::OK);
        state = body["state"].clone();
        assert_conserved(&state);
    }
    assert_eq!(state["player_score"], projected);
    assert_eq!(state["finished"], json!(true));
}

#[tokio::test]
async fn heuristic_hints_stay_legal_through_a_game() {
    let app = app();
    for strategy in ["born-free", "born-free-5", "fas-lower"] {
        let (id, mut state) = new_game(&app, 60).await;
        loop {
            let (_, h) = call(&app, "GET", &format!("/games/{id}/hint?strategy={strategy}"), None).await;
            let Some(p) = h["suggested_pick"].as_u64() else { break };
            assert!(ints(&state["legal_picks"]).contains(&p), "{strategy}: {p}");
            let (_, body) = call(&app, "POST", &format!("/games/{id}/pick"), Some(json!({ "value": p }))).await;
            state = body["state"].clone();
            assert_conserved(&state);
        }
        assert_eq!(state["finished"], json!(true));
        assert_eq!(state["outcome"], json!("win"), "{strategy}");
    }
}

#[tokio::test]
async fn oracle_hints_are_capped() {
    let app = app();
    let (id, _) = new_game(&app, 40).await;
    let (status, _) = call(&app, "GET", &format!("/games/{id}/hint?strategy=oracle"), None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn bounds_reports() {
    let app = app();
    let (status, r) = call(&app, "GET", "/bounds?n=4", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!((r["lower"].clone(), r["upper"].clone(), r["optimal"].clone()), (json!(7), json!(7), json!(7)));
    let (_, r) = call(&app, "GET", "/bounds?n=1", None).await;
    assert_eq!((r["lower"].clone(), r["upper"].clone(), r["optimal"].clone()), (json!(0), json!(0), json!(0)));
    let (_, r) = call(&app, "GET", "/bounds?n=100", None).await;
    assert!(r.get("optimal").is_none());
    assert!(r["lower"].as_u64() <= r["upper"].as_u64());
    let (_, again) = call(&app, "GET", "/bounds?n=100", None).await;
    assert_eq!(r, again);
    for uri in ["/bounds?n=0", "/bounds?n=2001", "/bounds", "/bounds?n=x"] {
        let (status, _) = call(&app, "GET", uri, None).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{uri}");
    }
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn concurrent_picks_on_one_session_apply_once() {
    let app = app();
    let (id, _) = new_game(&app, 30).await;
    let uri = format!("/games/{id}/pick");
    let tasks: Vec<_> = (0..8)
        .map(|_| {
            let (app, uri) = (app.clone(), uri.clone());
            tokio::spawn(async move { call(&app, "POST", &uri, Some(json!({ "value": 30 }))).await })
        })
        .collect();
    let mut ok = 0;
    for t in tasks {
        let (status, body) = t.await.unwrap();
        match status {
            StatusCode::OK => {
                ok += 1;
                assert_eq!(ints(&body["taxed"]), vec![1, 2, 3, 5, 6, 10, 15]);
                assert_conserved(&body["state"]);
            }
            StatusCode::CONFLICT => assert_eq!(body["reason"], json!("not in play")),
            other => panic!("unexpected {other}"),
        }
    }
    assert_eq!(ok, 1);
}

#[tokio::test]
async fn cors_headers_are_sent() {
    let app = router(ServiceConfig {
        cors_origin: Some("http://localhost:5173".into()),
        ..ServiceConfig::default()
    })
    .unwrap();
    let req = Request::builder()
        .method("OPTIONS")
        .uri("/games")
        .header(header::ORIGIN, "http://localhost:5173")
        .header(header::ACCESS_CONTROL_REQUEST_METHOD, "POST")
        .body(Body::empty())
        .unwrap();
    let resp = app.oneshot(req).await.unwrap();
    assert_eq!(
        resp.headers()[header::ACCESS_CONTROL_ALLOW_ORIGIN],
        "http://localhost:5173"
    );
    assert!(router(ServiceConfig {
        cors_origin: Some("bad\norigin".into()),
        ..ServiceConfig::default()
    })
    .is_err());
}
