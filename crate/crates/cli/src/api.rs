//! The JSON session service.
//!
//! Every error body is `{"code", "message"}`. Sessions are shown through
//! [`PlayerView`] only, so hidden configurations never leave the server.

use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use ludigroup_core::algebra::Word;
use ludigroup_core::catalog::definition::GameDefinition;
use ludigroup_core::game::{
    Archetype, CardBudget, Event, GameError, GameSpec, PlayerView, Submission, Variants, WinAt,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::store::{SessionStore, StoreError};

#[derive(Debug, Serialize, Deserialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: u16,
    pub code: String,
    pub message: String,
}

impl ApiError {
    fn new(status: StatusCode, code: &str, message: impl Into<String>) -> Self {
        ApiError {
            status: status.as_u16(),
            code: code.to_string(),
            message: message.into(),
        }
    }

    fn bad_request(message: impl Into<String>) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, "bad_request", message)
    }
}

impl From<GameError> for ApiError {
    fn from(e: GameError) -> Self {
        use StatusCode as S;
        let (status, code) = match &e {
            GameError::InvalidSpec(_) => (S::BAD_REQUEST, "invalid_spec"),
            GameError::UnknownGenerator(_) => (S::BAD_REQUEST, "unknown_generator"),
            GameError::Action(_) => (S::BAD_REQUEST, "invalid_input"),
            GameError::Solver(_) => (S::BAD_REQUEST, "unsolvable_spec"),
            GameError::Inapplicable(_) => (S::CONFLICT, "inapplicable"),
            GameError::OutOfCards(_) => (S::CONFLICT, "out_of_cards"),
            GameError::BudgetViolation(_) => (S::CONFLICT, "budget_violation"),
            GameError::Terminated => (S::CONFLICT, "terminated"),
            GameError::EmptyHistory => (S::CONFLICT, "empty_history"),
            GameError::ModeMismatch(_) => (S::CONFLICT, "mode_mismatch"),
        };
        ApiError::new(status, code, e.to_string())
    }
}

impl From<StoreError> for ApiError {
    fn from(e: StoreError) -> Self {
        match e {
            StoreError::UnknownGame(_) => ApiError::new(StatusCode::NOT_FOUND, "unknown_game", e.to_string()),
            StoreError::UnknownSession(_) => ApiError::new(StatusCode::NOT_FOUND, "unknown_session", e.to_string()),
            StoreError::Game(g) => g.into(),
            StoreError::Io(m) => ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "store", m),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        (status, Json(self)).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

/// Parses a request body ourselves so malformed JSON gets our error shape.
fn body<T: DeserializeOwned>(bytes: &Bytes) -> Result<T, ApiError> {
    let bytes: &[u8] = if bytes.iter().all(u8::is_ascii_whitespace) { b"{}" } else { bytes };
    serde_json::from_slice(bytes).map_err(|e| ApiError::bad_request(format!("invalid request body: {e}")))
}

/// Runs store work off the async threads: drawing an instance may search.
async fn blocking<T: Send + 'static>(f: impl FnOnce() -> Result<T, ApiError> + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()))?
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GameSummary {
    pub id: String,
    pub title: String,
    pub family: String,
    pub archetype: Archetype,
    pub variants: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SessionBody {
    pub id: String,
    #[serde(flatten)]
    pub view: PlayerView,
}

#[derive(Debug, Deserialize)]
struct CreateRequest {
    game: String,
    #[serde(default)]
    archetype: Option<Archetype>,
    /// Either a list of names or `{"blind": true, ...}`.
    #[serde(default)]
    variants: Option<serde_json::Value>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    budget: Option<CardBudget>,
    #[serde(default)]
    win_at: Option<WinAt>,
}

#[derive(Debug, Deserialize)]
struct MoveRequest {
    generator: String,
}

/// A word as text (`"a b^-1"`) or as its letter list.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum WordInput {
    Text(String),
    Letters(Word),
}

#[derive(Debug, Deserialize)]
struct SubmitRequest {
    #[serde(default)]
    word: Option<WordInput>,
    #[serde(default)]
    configuration: Option<String>,
}

fn parse_variants(v: Option<serde_json::Value>) -> Result<Variants, ApiError> {
    match v {
        None | Some(serde_json::Value::Null) => Ok(Variants::NONE),
        Some(serde_json::Value::Array(items)) => {
            let names: Result<Vec<&str>, ApiError> = items
                .iter()
                .map(|i| i.as_str().ok_or_else(|| ApiError::bad_request("variant names are strings")))
                .collect();
            Ok(Variants::parse_list(names?)?)
        }
        Some(serde_json::Value::String(s)) => Ok(Variants::parse_list(s.split(','))?),
        Some(other) => serde_json::from_value(other).map_err(|e| ApiError::bad_request(format!("variants: {e}"))),
    }
}

pub fn router(store: Arc<SessionStore>) -> Router {
    Router::new()
        .route("/games", get(list_games))
        .route("/games/{id}", get(get_game))
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/moves", post(play_move))
        .route("/sessions/{id}/undo", post(undo))
        .route("/sessions/{id}/submit", post(submit))
        .route("/sessions/{id}/impossible", post(declare_impossible))
        .route("/sessions/{id}/events", get(events))
        .fallback(|| async { ApiError::new(StatusCode::NOT_FOUND, "not_found", "no such endpoint") })
        .with_state(store)
}

async fn list_games(State(store): State<Arc<SessionStore>>) -> ApiResult<Vec<GameSummary>> {
    let out = blocking(move || {
        store
            .game_ids()
            .iter()
            .map(|id| {
                let g = store.game(id)?;
                Ok(GameSummary {
                    id: g.id.clone(),
                    title: g.title.clone(),
                    family: g.family.clone(),
                    archetype: g.defaults.archetype,
                    variants: g.defaults.variants.names().into_iter().map(String::from).collect(),
                })
            })
            .collect::<Result<Vec<_>, ApiError>>()
    })
    .await?;
    Ok(Json(out))
}

async fn get_game(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> ApiResult<GameDefinition> {
    let def = blocking(move || Ok(GameDefinition::of(&*store.game(&id)?))).await?;
    Ok(Json(def))
}

async fn create_session(State(store): State<Arc<SessionStore>>, bytes: Bytes) -> Result<Response, ApiError> {
    let req: CreateRequest = body(&bytes)?;
    let out = blocking(move || {
        let game = store.game(&req.game)?;
        let spec = GameSpec {
            archetype: req.archetype.unwrap_or(game.defaults.archetype),
            variants: parse_variants(req.variants)?,
            seed: req.seed.unwrap_or(0),
            budget: req.budget,
            win_at: req.win_at,
            game: req.game,
        };
        let (id, view) = store.create(spec)?;
        Ok(SessionBody { id, view })
    })
    .await?;
    Ok((StatusCode::CREATED, Json(out)).into_response())
}

fn view_of(store: &SessionStore, id: String) -> Result<SessionBody, ApiError> {
    let view = store.read(&id, |s| s.view())?;
    Ok(SessionBody { id, view })
}

async fn get_session(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> ApiResult<SessionBody> {
    Ok(Json(blocking(move || view_of(&store, id)).await?))
}

async fn play_move(State(store): State<Arc<SessionStore>>, Path(id): Path<String>, bytes: Bytes) -> ApiResult<SessionBody> {
    let req: MoveRequest = body(&bytes)?;
    let out = blocking(move || {
        store.update(&id, |s| s.play_move(&req.generator))?;
        view_of(&store, id)
    })
    .await?;
    Ok(Json(out))
}

async fn undo(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> ApiResult<SessionBody> {
    let out = blocking(move || {
        store.update(&id, |s| s.undo())?;
        view_of(&store, id)
    })
    .await?;
    Ok(Json(out))
}

async fn submit(State(store): State<Arc<SessionStore>>, Path(id): Path<String>, bytes: Bytes) -> ApiResult<SessionBody> {
    let req: SubmitRequest = body(&bytes)?;
    let submission = match (req.word, req.configuration) {
        (Some(WordInput::Text(t)), None) => Submission::Word {
            word: t.parse().map_err(|e| ApiError::bad_request(format!("word: {e}")))?,
        },
        (Some(WordInput::Letters(word)), None) => Submission::Word { word },
        (None, Some(configuration)) => Submission::Configuration { configuration },
        _ => return Err(ApiError::bad_request("submit either a word or a configuration")),
    };
    let out = blocking(move || {
        store.update(&id, |s| s.submit(submission))?;
        view_of(&store, id)
    })
    .await?;
    Ok(Json(out))
}

async fn declare_impossible(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> ApiResult<SessionBody> {
    let out = blocking(move || {
        store.update(&id, |s| s.declare_impossible())?;
        view_of(&store, id)
    })
    .await?;
    Ok(Json(out))
}

async fn events(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> ApiResult<Vec<Event>> {
    Ok(Json(blocking(move || Ok(store.read(&id, |s| s.events().to_vec())?)).await?))
}

/// Serves until ctrl-c.
pub async fn serve(store: Arc<SessionStore>, port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("0.0.0.0", port)).await?;
    eprintln!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(store))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
