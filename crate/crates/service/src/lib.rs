//! HTTP API for the taxman playground.
//!
//! | route | body / query | reply |
//! |---|---|---|
//! | `POST /games` | `{"n": 7}` | `201 {"id", "state"}` |
//! | `POST /games/{id}/pick` | `{"value": 7}` | `{"state", "taxed"}` |
//! | `GET /games/{id}/hint` | `?strategy=born-free` | `{"strategy", "suggested_pick", "projected_final_score", "heuristic"}` |
//! | `GET /bounds` | `?n=4` | `{"n", "lower", "upper", "optimal"?, "witness"}` |
//!
//! A `state` is `{"n", "in_play", "legal_picks", "player_score",
//! "taxman_score", "picks", "finished", "outcome"}`. A game finishes by
//! itself once no legal pick is left; `outcome` is `null` until then.
//! Errors are `{"error": message}`, plus `"reason"` (`"no tax"` or
//! `"not in play"`) on a 409 illegal pick.
//!
//! Sessions live in memory and are dropped after an idle period.

pub mod hint;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, MutexGuard, RwLock};
use std::time::{Duration, Instant};

use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{Path, Query, State};
use axum::http::{header, HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use taxman_core::bounds::bounds_report_with_cap;
use taxman_core::oracle::DEFAULT_ORACLE_CAP;
use taxman_core::{new_standard_game, BoundsReport, Error, Outcome, Score, StandardGame};
use tower_http::cors::{AllowOrigin, CorsLayer};

pub use hint::{hint, Hint, HintCaps, Strategy};

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    /// Largest pot a session may use.
    pub max_n: usize,
    /// Largest pot for `/bounds` and fas-lower hints.
    pub bounds_max_n: usize,
    /// Largest pot solved exactly, for `/bounds` and oracle hints.
    pub oracle_cap: usize,
    pub session_ttl: Duration,
    /// Allowed browser origin; any origin when `None`.
    pub cors_origin: Option<String>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            max_n: 10_000,
            bounds_max_n: 2_000,
            oracle_cap: DEFAULT_ORACLE_CAP,
            session_ttl: Duration::from_secs(3600),
            cors_origin: None,
        }
    }
}

struct Session {
    game: StandardGame,
    touched: Instant,
}

struct Shared {
    config: ServiceConfig,
    sessions: Mutex<HashMap<String, Arc<Mutex<Session>>>>,
    bounds: RwLock<HashMap<usize, BoundsReport>>,
}

type AppState = Arc<Shared>;

fn lock<T>(m: &Mutex<T>) -> MutexGuard<'_, T> {
    m.lock().unwrap_or_else(|poisoned| poisoned.into_inner())
}

impl Shared {
    fn hint_caps(&self) -> HintCaps {
        HintCaps {
            oracle: self.config.oracle_cap,
            fas: self.config.bounds_max_n,
        }
    }

    fn purge_expired(&self, sessions: &mut HashMap<String, Arc<Mutex<Session>>>) {
        let ttl = self.config.session_ttl;
        sessions.retain(|_, s| lock(s).touched.elapsed() < ttl);
    }

    fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        let mut sessions = lock(&self.sessions);
        self.purge_expired(&mut sessions);
        let s = sessions
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, format!("no game {id}")))?;
        lock(&s).touched = Instant::now();
        Ok(s)
    }
}

#[derive(Debug, Serialize)]
struct ErrorBody {
    error: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

#[derive(Debug)]
struct ApiError {
    status: StatusCode,
    body: ErrorBody,
}

impl ApiError {
    fn new(status: StatusCode, error: impl Into<String>) -> Self {
        ApiError {
            status,
            body: ErrorBody {
                error: error.into(),
                reason: None,
            },
        }
    }

    fn bad_request(error: impl Into<String>) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, error)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

impl From<JsonRejection> for ApiError {
    fn from(r: JsonRejection) -> Self {
        ApiError::bad_request(r.body_text())
    }
}

impl From<QueryRejection> for ApiError {
    fn from(r: QueryRejection) -> Self {
        ApiError::bad_request(r.body_text())
    }
}

#[derive(Debug, Serialize)]
struct StatePayload {
    n: usize,
    in_play: Vec<usize>,
    legal_picks: Vec<usize>,
    player_score: Score,
    taxman_score: Score,
    picks: Vec<usize>,
    finished: bool,
    outcome: Option<Outcome>,
}

impl StatePayload {
    fn of(game: &StandardGame) -> Self {
        StatePayload {
            n: game.arena().n(),
            in_play: game.in_play().collect(),
            legal_picks: game.legal_picks(),
            player_score: game.player_score(),
            taxman_score: game.taxman_score(),
            picks: game.history().picks(),
            finished: game.is_finished(),
            outcome: game.is_finished().then(|| game.outcome()),
        }
    }
}

#[derive(Deserialize)]
struct NewGame {
    n: usize,
}

#[derive(Serialize)]
struct Created {
    id: String,
    state: StatePayload,
}

async fn create_game(
    State(app): State<AppState>,
    body: Result<Json<NewGame>, JsonRejection>,
) -> Result<(StatusCode, Json<Created>), ApiError> {
    let Json(NewGame { n }) = body?;
    if n == 0 || n > app.config.max_n {
        return Err(ApiError::bad_request(format!("n must be in 1..={}", app.config.max_n)));
    }
    let mut game = new_standard_game(n).map_err(|e| ApiError::bad_request(e.to_string()))?;
    if game.is_over() {
        game.close();
    }
    let state = StatePayload::of(&game);
    let id = uuid::Uuid::new_v4().simple().to_string();
    let session = Session {
        game,
        touched: Instant::now(),
    };
    let mut sessions = lock(&app.sessions);
    app.purge_expired(&mut sessions);
    sessions.insert(id.clone(), Arc::new(Mutex::new(session)));
    Ok((StatusCode::CREATED, Json(Created { id, state })))
}

#[derive(Deserialize)]
struct PickBody {
    value: usize,
}

#[derive(Serialize)]
struct Picked {
    state: StatePayload,
    taxed: Vec<usize>,
}

async fn pick(
    State(app): State<AppState>,
    Path(id): Path<String>,
    body: Result<Json<PickBody>, JsonRejection>,
) -> Result<Json<Picked>, ApiError> {
    let session = app.session(&id)?;
    let Json(PickBody { value }) = body?;
    let mut s = lock(&session);
    let taxed = match s.game.apply_pick(value) {
        Ok(mv) => mv.taxed.clone(),
        Err(Error::IllegalPick { reason, .. }) => {
            return Err(ApiError {
                status: StatusCode::CONFLICT,
                body: ErrorBody {
                    error: format!("illegal pick {value}"),
                    reason: Some(reason.to_string()),
                },
            })
        }
        Err(e) => return Err(ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string())),
    };
    if s.game.is_over() {
        s.game.close();
    }
    Ok(Json(Picked {
        state: StatePayload::of(&s.game),
        taxed,
    }))
}

#[derive(Deserialize)]
struct HintQuery {
    strategy: Option<String>,
}

async fn get_hint(
    State(app): State<AppState>,
    Path(id): Path<String>,
    query: Result<Query<HintQuery>, QueryRejection>,
) -> Result<Json<Hint>, ApiError> {
    let session = app.session(&id)?;
    let Query(q) = query?;
    let strategy: Strategy = q
        .strategy
        .as_deref()
        .unwrap_or("born-free")
        .parse()
        .map_err(ApiError::bad_request)?;
    let game = lock(&session).game.clone();
    let caps = app.hint_caps();
    tokio::task::spawn_blocking(move || hint(&game, strategy, caps))
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?
        .map(Json)
        .map_err(ApiError::bad_request)
}

#[derive(Deserialize)]
struct BoundsQuery {
    n: usize,
}

async fn get_bounds(
    State(app): State<AppState>,
    query: Result<Query<BoundsQuery>, QueryRejection>,
) -> Result<Json<BoundsReport>, ApiError> {
    let Query(BoundsQuery { n }) = query?;
    if n == 0 || n > app.config.bounds_max_n {
        return Err(ApiError::bad_request(format!(
            "n must be in 1..={}",
            app.config.bounds_max_n
        )));
    }
    if let Some(r) = app.bounds.read().unwrap_or_else(|p| p.into_inner()).get(&n) {
        return Ok(Json(r.clone()));
    }
    let cap = app.config.oracle_cap;
    let report = tokio::task::spawn_blocking(move || bounds_report_with_cap(n, (n <= cap).then_some(cap)))
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?
        .map_err(|e| ApiError::bad_request(e.to_string()))?;
    app.bounds
        .write()
        .unwrap_or_else(|p| p.into_inner())
        .insert(n, report.clone());
    Ok(Json(report))
}

fn cors(origin: Option<&str>) -> Result<CorsLayer, String> {
    let allow = match origin {
        None => AllowOrigin::any(),
        Some(o) => AllowOrigin::exact(
            HeaderValue::from_str(o).map_err(|_| format!("bad CORS origin {o:?}"))?,
        ),
    };
    Ok(CorsLayer::new()
        .allow_origin(allow)
        .allow_methods([Method::GET, Method::POST])
        .allow_headers([header::CONTENT_TYPE]))
}

/// The API as a router. Fails only on an unusable CORS origin.
pub fn router(config: ServiceConfig) -> Result<Router, String> {
    let layer = cors(config.cors_origin.as_deref())?;
    let app = Arc::new(Shared {
        config,
        sessions: Mutex::new(HashMap::new()),
        bounds: RwLock::new(HashMap::new()),
    });
    Ok(Router::new()
        .route("/games", post(create_game))
        .route("/games/{id}/pick", post(pick))
        .route("/games/{id}/hint", get(get_hint))
        .route("/bounds", get(get_bounds))
        .layer(layer)
        .with_state(app))
}

/// Serve the API on `listener` until the process ends.
pub async fn serve(listener: tokio::net::TcpListener, config: ServiceConfig) -> std::io::Result<()> {
    let app = router(config).map_err(std::io::Error::other)?;
    axum::serve(listener, app).await
}
