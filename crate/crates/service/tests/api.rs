use std::collections::BTreeSet;
use std::time::Duration;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use ecn_core::{Budget, Position, Ruleset};
use ecn_service::{router, Config, PAGE_SIZE};
use http_body_util::BodyExt;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use tower::ServiceExt;

fn app() -> Router {
    router(Config::default())
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(match body {
            Some(b) => Body::from(b.to_string()),
            None => Body::empty(),
        })
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = if bytes.is_empty() { Value::Null } else { serde_json::from_slice(&bytes).unwrap() };
    (status, value)
}

async fn post(app: &Router, uri: &str, body: Value) -> (StatusCode, Value) {
    call(app, "POST", uri, Some(body)).await
}

#[tokio::test]
async fn evaluate_examples() {
    let app = app();
    let (s, v) = post(&app, "/evaluate", json!({"ruleset": "ECN(6_{1,3},2)", "position": "1,2,3,1,2,3"})).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["outcome"], "P");
    assert_eq!(v["method"], json!(["ECN6132"]));
    assert!(v.get("grundy").is_none());

    let (_, v) = post(&app, "/evaluate", json!({"ruleset": "ECN(6_{1},2)", "position": "1,2,0,1,0,2"})).await;
    assert_eq!(v["method"], json!(["oracle(bound=2)"]));
    assert!(v["grundy"].is_u64());
}

#[tokio::test]
async fn stateless_endpoints_are_deterministic() {
    let app = app();
    let body = json!({"ruleset": "ECN(7_{1,2},5)", "position": "2,3,1,0,2,3,1"});
    for uri in ["/evaluate", "/moves", "/bestmove"] {
        let a = post(&app, uri, body.clone()).await;
        let b = post(&app, uri, body.clone()).await;
        assert_eq!(a, b, "{uri}");
        assert_eq!(a.0, StatusCode::OK);
    }
}

#[tokio::test]
async fn bestmove_on_zero_is_p() {
    let (s, v) = post(&app(), "/bestmove", json!({"ruleset": "ECN(6_{1,2},3)", "position": "0,0,0,0,0,0"})).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v, json!({"outcome": "P"}));
}

#[tokio::test]
async fn bestmove_reaches_p() {
    let app = app();
    let (_, v) = post(&app, "/bestmove", json!({"ruleset": "ECN(6_{1,2},3)", "position": "1,2,3,0,1,2"})).await;
    assert_eq!(v["outcome"], "N");
    let next = v["position"].as_str().unwrap();
    assert_eq!(v["move"]["result"], next);
    let (_, e) = post(&app, "/evaluate", json!({"ruleset": "ECN(6_{1,2},3)", "position": next})).await;
    assert_eq!(e["outcome"], "P");
}

#[tokio::test]
async fn moves_are_paged() {
    let app = app();
    let body = json!({"ruleset": "ECN(6_{1,2},3)", "position": "5,5,5,5,5,5"});
    let (s, first) = post(&app, "/moves", body.clone()).await;
    assert_eq!(s, StatusCode::OK);
    let total = first["total"].as_u64().unwrap() as usize;
    assert!(total > PAGE_SIZE);
    let mut seen = Vec::new();
    let mut page = first;
    loop {
        let moves = page["moves"].as_array().unwrap();
        assert!(moves.len() <= PAGE_SIZE);
        seen.extend(moves.iter().map(|m| m["result"].as_str().unwrap().to_string()));
        let Some(cursor) = page["next_cursor"].as_str() else { break };
        let mut next = body.clone();
        next["cursor"] = json!(cursor);
        page = post(&app, "/moves", next).await.1;
    }
    assert_eq!(seen.len(), total);
    assert_eq!(seen.iter().collect::<BTreeSet<_>>().len(), total);
}

/// The faces offered by /moves are exactly the faces whose piles are all
/// non-empty, which is what a board widget may let the player select.
#[tokio::test]
async fn moves_offer_exactly_the_playable_faces() {
    let app = app();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for rule in ["ECN(6_{1,2},3)", "ECN(7_{1,2},5)", "ECN(8_{1,3},4)"] {
        let r: Ruleset = rule.parse().unwrap();
        for _ in 0..50 {
            let piles: Vec<u64> = (0..r.m()).map(|_| rng.random_range(0..=2)).collect();
            let pos = Position::new(piles.clone());
            let mut offered: BTreeSet<Vec<usize>> = BTreeSet::new();
            let mut body = json!({"ruleset": rule, "position": pos.to_string()});
            loop {
                let (_, v) = post(&app, "/moves", body.clone()).await;
                for m in v["moves"].as_array().unwrap() {
                    offered.insert(serde_json::from_value(m["face"].clone()).unwrap());
                }
                match v["next_cursor"].as_str() {
                    Some(c) => body["cursor"] = json!(c),
                    None => break,
                }
            }
            let expected: BTreeSet<Vec<usize>> = r
                .all_faces()
                .into_iter()
                .filter(|f| !f.is_empty() && f.indices().all(|i| piles[i] > 0))
                .map(|f| f.indices().collect())
                .collect();
            assert_eq!(offered, expected, "{rule} {pos}");
        }
    }
}

#[tokio::test]
async fn error_statuses() {
    let app = app();
    let (s, v) = post(&app, "/evaluate", json!({"ruleset": "ECN(6_{1,2},3", "position": "0,0,0,0,0,0"})).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    assert!(v["error"].is_string());
    let (s, _) = post(&app, "/evaluate", json!({"ruleset": "ECN(6_{1,2},3)", "position": "0,0,0"})).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    let (s, _) = post(&app, "/evaluate", json!({"ruleset": 5})).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    let req = Request::post("/evaluate").body(Body::from("{not json")).unwrap();
    assert_eq!(app.clone().oneshot(req).await.unwrap().status(), StatusCode::BAD_REQUEST);

    let (s, _) = call(&app, "GET", "/sessions/nope", None).await;
    assert_eq!(s, StatusCode::NOT_FOUND);
    let (s, _) = post(&app, "/sessions/nope/engine-move", json!({})).await;
    assert_eq!(s, StatusCode::NOT_FOUND);

    let small = router(Config {
        budget: Budget::new(1000),
        ..Config::default()
    });
    let (s, v) = post(&small, "/evaluate", json!({"ruleset": "ECN(6_{1},2)", "position": "50,50,50,50,50,50"})).await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(v["error"].as_str().unwrap().contains("budget exceeded"));
}

async fn new_session(app: &Router, rule: &str, pos: &str) -> String {
    let (s, v) = post(app, "/sessions", json!({"ruleset": rule, "position": pos})).await;
    assert_eq!(s, StatusCode::CREATED, "{v}");
    v["id"].as_str().unwrap().to_string()
}

#[tokio::test]
async fn session_moves_are_validated() {
    let app = app();
    let id = new_session(&app, "ECN(6_{1,2},3)", "1,2,3,0,1,2").await;
    let uri = format!("/sessions/{id}/move");

    let (s, v) = post(&app, &uri, json!({"removals": []})).await;
    assert_eq!(s, StatusCode::CONFLICT);
    assert!(v["error"].as_str().unwrap().contains("must remove at least one token in total"));
    let (s, v) = post(&app, &uri, json!({"removals": [[0, 1], [3, 1]]})).await;
    assert_eq!(s, StatusCode::CONFLICT);
    assert!(v["error"].as_str().unwrap().contains("not a face"), "{v}");
    let (s, v) = post(&app, &uri, json!({"removals": [[0, 2]]})).await;
    assert_eq!(s, StatusCode::CONFLICT);
    assert!(v["error"].as_str().unwrap().contains("pile 0"), "{v}");

    let (s, v) = post(&app, &uri, json!({"removals": [[1, 1], [2, 3]]})).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["position"], "1,1,0,0,1,2");
    assert_eq!(v["history"][0]["by"], "human");
    assert_eq!(v["history"][0]["move"]["face"], json!([1, 2]));

    let (_, got) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(got, v);
}

#[tokio::test]
async fn engine_at_terminal_is_a_conflict() {
    let app = app();
    let id = new_session(&app, "ECN(4_{1},2)", "0,0,0,0").await;
    let (s, _) = post(&app, &format!("/sessions/{id}/engine-move"), json!({})).await;
    assert_eq!(s, StatusCode::CONFLICT);
}

#[tokio::test]
async fn engine_resists_from_p() {
    let app = app();
    // (1,1,0,1,1,0) is P in ECN(6_{1,2},3).
    let id = new_session(&app, "ECN(6_{1,2},3)", "1,1,0,1,1,0").await;
    let (s, v) = post(&app, &format!("/sessions/{id}/engine-move"), json!({})).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["choice"]["kind"], "resistance");
    assert!(v["choice"]["opponent_winning_moves"].as_u64().unwrap() >= 1);
    assert_eq!(v["session"]["outcome"], "N");
}

#[tokio::test]
async fn sessions_expire() {
    let app = router(Config {
        session_ttl: Duration::from_millis(50),
        ..Config::default()
    });
    let id = new_session(&app, "ECN(4_{1},2)", "1,1,1,1").await;
    assert_eq!(call(&app, "GET", &format!("/sessions/{id}"), None).await.0, StatusCode::OK);
    tokio::time::sleep(Duration::from_millis(120)).await;
    assert_eq!(call(&app, "GET", &format!("/sessions/{id}"), None).await.0, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn rulesets_and_schema() {
    let app = app();
    let (s, v) = call(&app, "GET", "/rulesets", None).await;
    assert_eq!(s, StatusCode::OK);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 238);
    let row = rows.iter().find(|r| r["ruleset"] == "ECN(8_{4},3)").unwrap();
    assert_eq!(row["resolution"], "PileMerge");
    let (s, v) = call(&app, "GET", "/schema", None).await;
    assert_eq!(s, StatusCode::OK);
    assert!(v["routes"]["POST /evaluate"]["request"].is_object());
}

#[tokio::test]
async fn cors_header_present() {
    let req = Request::get("/rulesets").header("origin", "http://localhost:5173").body(Body::empty()).unwrap();
    let resp = app().oneshot(req).await.unwrap();
    assert_eq!(resp.headers()["access-control-allow-origin"], "*");
}

/// Engine starts from a random N-position; the human answers with random
/// legal moves. Every engine reply must evaluate to P and the engine must
/// take the last move.
#[tokio::test(flavor = "multi_thread")]
async fn engine_never_loses() {
    let app = app();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for rule in ["ECN(6_{1,2},3)", "ECN(7_{1,2},5)"] {
        let m = rule.parse::<Ruleset>().unwrap().m();
        let mut wins = 0;
        for _ in 0..100 {
            let start = loop {
                let pos = Position::new((0..m).map(|_| rng.random_range(0..=3)).collect());
                let (_, v) = post(&app, "/evaluate", json!({"ruleset": rule, "position": pos.to_string()})).await;
                if v["outcome"] == "N" {
                    break pos;
                }
            };
            let id = new_session(&app, rule, &start.to_string()).await;
            loop {
                let (s, v) = post(&app, &format!("/sessions/{id}/engine-move"), json!({})).await;
                assert_eq!(s, StatusCode::OK, "{v}");
                assert_eq!(v["choice"]["kind"], "winning");
                assert_eq!(v["session"]["outcome"], "P");
                if v["session"]["game_over"] == true {
                    wins += 1;
                    break;
                }
                let pos = v["session"]["position"].as_str().unwrap();
                let (_, page) = post(&app, "/moves", json!({"ruleset": rule, "position": pos})).await;
                let mv = page["moves"].as_array().unwrap().choose(&mut rng).unwrap();
                let (s, _) = post(&app, &format!("/sessions/{id}/move"), json!({"removals": mv["removals"]})).await;
                assert_eq!(s, StatusCode::OK);
            }
        }
        assert_eq!(wins, 100, "{rule}");
    }
}
