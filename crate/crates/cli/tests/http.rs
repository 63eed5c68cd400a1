use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use ludigroup::api::router;
use ludigroup::store::SessionStore;
use ludigroup_core::catalog::game;
use ludigroup_core::solver::{factorize, SearchOptions};
use proptest::prelude::*;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};
use tower::ServiceExt;

struct Client {
    app: axum::Router,
}

impl Client {
    fn new() -> Self {
        Client {
            app: router(Arc::new(SessionStore::in_memory())),
        }
    }

    async fn call(&self, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
        let req = Request::builder().method(method).uri(uri).header("content-type", "application/json");
        let req = match body {
            Some(b) => req.body(Body::from(b.to_string())).unwrap(),
            None => req.body(Body::empty()).unwrap(),
        };
        let resp = self.app.clone().oneshot(req).await.unwrap();
        let status = resp.status();
        let bytes = resp.into_body().collect().await.unwrap().to_bytes();
        let value = if bytes.is_empty() { Value::Null } else { serde_json::from_slice(&bytes).unwrap() };
        (status, value)
    }

    async fn create(&self, spec: Value) -> (String, Value) {
        let (status, body) = self.call("POST", "/sessions", Some(spec)).await;
        assert_eq!(status, StatusCode::CREATED, "{body}");
        (body["id"].as_str().unwrap().to_string(), body)
    }
}

#[tokio::test]
async fn games_are_listed_with_render_metadata() {
    let c = Client::new();
    let (status, list) = c.call("GET", "/games", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(list.as_array().unwrap().len(), 32);
    let (status, def) = c.call("GET", "/games/elephants_rotating", None).await;
    assert_eq!(status, StatusCode::OK);
    assert!(def["render"]["board"].is_object());
    assert!(!def["render"]["hint_layers"].as_array().unwrap().is_empty());
    let (status, err) = c.call("GET", "/games/nope", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(err["code"], "unknown_game");
}

#[tokio::test]
async fn a_move_reaching_the_target_wins() {
    let c = Client::new();
    let (id, body) = c.create(json!({"game": "linear5", "archetype": "factorization", "seed": 4})).await;
    let g = game("linear5").unwrap();
    let u = g.space.parse(body["configuration"].as_str().unwrap()).unwrap();
    let t = g.space.parse(body["target"].as_str().unwrap()).unwrap();
    let w = factorize(&g.space, &u, &t, SearchOptions::default()).unwrap();
    let mut last = Value::Null;
    for l in w.labels() {
        let (status, b) = c.call("POST", &format!("/sessions/{id}/moves"), Some(json!({"generator": l}))).await;
        assert_eq!(status, StatusCode::OK);
        last = b;
    }
    assert_eq!(last["status"], "won");
    let (status, err) = c.call("POST", &format!("/sessions/{id}/moves"), Some(json!({"generator": "s1"}))).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(err["code"], "terminated");
    let (_, events) = c.call("GET", &format!("/sessions/{id}/events"), None).await;
    assert_eq!(events.as_array().unwrap().len(), w.len());
}

#[tokio::test]
async fn blind_sessions_show_no_configuration() {
    let c = Client::new();
    let (id, created) = c.create(json!({"game": "linear5", "archetype": "factorization", "variants": ["blind"]})).await;
    assert!(created.get("configuration").is_none());
    let (_, body) = c.call("GET", &format!("/sessions/{id}"), None).await;
    assert!(body.get("configuration").is_none());
    assert!(body.get("target").is_some());
    let (status, _) = c.call("POST", &format!("/sessions/{id}/moves"), Some(json!({"generator": "s1"}))).await;
    assert_eq!(status, StatusCode::CONFLICT);
    let (status, done) = c.call("POST", &format!("/sessions/{id}/submit"), Some(json!({"word": "s1 s2"}))).await;
    assert_eq!(status, StatusCode::OK);
    assert_ne!(done["status"], "in_progress");
    assert_eq!(done["resolution"]["trace"].as_array().unwrap().len(), 3);
}

#[tokio::test]
async fn declaring_a_solvable_instance_impossible_loses() {
    let c = Client::new();
    let (id, _) = c.create(json!({"game": "linear5", "archetype": "impossible_factorization", "seed": 2})).await;
    let (status, body) = c.call("POST", &format!("/sessions/{id}/impossible"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["status"], "lost");
    assert_eq!(body["resolution"]["verdict"], "solvable");
}

#[tokio::test]
async fn errors_are_json() {
    let c = Client::new();
    let (status, err) = c.call("GET", "/sessions/missing", None).await;
    assert_eq!((status, err["code"].as_str()), (StatusCode::NOT_FOUND, Some("unknown_session")));
    let (status, err) = c.call("POST", "/sessions", Some(json!({"nope": 1}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(err["message"].is_string());
    let (status, _) = c
        .call("POST", "/sessions", Some(json!({"game": "linear5", "archetype": "impossible_factorization", "variants": ["constrained"]})))
        .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (id, _) = c.create(json!({"game": "linear5"})).await;
    let (status, err) = c.call("POST", &format!("/sessions/{id}/moves"), Some(json!({"generator": "zz"}))).await;
    assert_eq!((status, err["code"].as_str()), (StatusCode::BAD_REQUEST, Some("unknown_generator")));
    let (status, err) = c.call("POST", &format!("/sessions/{id}/undo"), None).await;
    assert_eq!((status, err["code"].as_str()), (StatusCode::CONFLICT, Some("empty_history")));
}

/// Keys a player must not see while `body` is still in progress.
fn leaked(body: &Value, archetype: &str, blind: bool) -> Option<&'static str> {
    if body["status"] != "in_progress" {
        return None;
    }
    if blind && body.get("configuration").is_some() {
        return Some("configuration");
    }
    if archetype.contains("combination") && (body.get("target").is_some() || body.get("goals").is_some()) {
        return Some("target");
    }
    body.get("resolution").map(|_| "resolution")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn hidden_state_never_leaks(
        id in proptest::sample::select(vec!["linear5", "code3", "safe", "taquin3", "sheep", "hex"]),
        archetype in proptest::sample::select(vec!["factorization", "combination", "revealed_combination"]),
        blind in any::<bool>(),
        seed in 0u64..1000,
    ) {
        let rt = tokio::runtime::Builder::new_current_thread().enable_all().build().unwrap();
        rt.block_on(async {
            let c = Client::new();
            let variants: Vec<&str> = if blind { vec!["blind"] } else { vec![] };
            let (status, body) = c.call("POST", "/sessions", Some(json!({"game": id, "archetype": archetype, "variants": variants, "seed": seed}))).await;
            if status != StatusCode::CREATED {
                return;
            }
            assert_eq!(leaked(&body, archetype, blind), None);
            let sid = body["id"].as_str().unwrap().to_string();
            let labels: Vec<String> = body["generators"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect();
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            for _ in 0..12 {
                if blind {
                    break;
                }
                if rng.random_bool(0.2) {
                    c.call("POST", &format!("/sessions/{sid}/undo"), None).await;
                } else {
                    let l = labels.choose(&mut rng).unwrap();
                    c.call("POST", &format!("/sessions/{sid}/moves"), Some(json!({"generator": l}))).await;
                }
                let (_, now) = c.call("GET", &format!("/sessions/{sid}"), None).await;
                assert_eq!(leaked(&now, archetype, blind), None, "{now}");
                let (_, events) = c.call("GET", &format!("/sessions/{sid}/events"), None).await;
                if now["status"] == "in_progress" {
                    let text = events.to_string();
                    assert!(!text.contains("configuration"), "{text}");
                }
            }
        });
    }
}
