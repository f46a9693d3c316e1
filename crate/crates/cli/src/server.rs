//! HTTP API consumed by the explorer UI.
//!
//! Solve endpoints are stateless. Games live in memory, each behind its own
//! mutex; ordinal tables are cached per rule and shared read-only.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, RwLock};

use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{Html, IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use tower_http::services::ServeDir;

use chomp_core::play::MoveRecord;
use chomp_core::report::{self, SolveReport};
use chomp_core::{
    iso_check, Cell, ChompError, GameSession, NormalizedRule, OrdinalTable, Position, Rule, Seat,
};

pub struct AppState {
    table_budget: u32,
    tables: RwLock<HashMap<NormalizedRule, Arc<OrdinalTable>>>,
    games: RwLock<HashMap<u64, Arc<Mutex<GameSession>>>>,
    next_id: AtomicU64,
}

impl AppState {
    pub fn new(table_budget: u32) -> Arc<Self> {
        Arc::new(AppState {
            table_budget,
            tables: RwLock::default(),
            games: RwLock::default(),
            next_id: AtomicU64::new(1),
        })
    }

    fn check_budget(&self, volume: u32) -> Result<(), ApiError> {
        if volume > self.table_budget {
            return Err(ApiError::unprocessable(format!(
                "volume {volume} exceeds the service budget of {}",
                self.table_budget
            )));
        }
        Ok(())
    }

    /// Cached table for `rule` reaching at least `volume`.
    fn table_for(&self, rule: &NormalizedRule, volume: u32) -> Result<Arc<OrdinalTable>, ApiError> {
        self.check_budget(volume)?;
        if let Some(t) = self.tables.read().expect("table cache poisoned").get(rule) {
            if t.frontier() >= volume {
                return Ok(t.clone());
            }
        }
        let table = Arc::new(OrdinalTable::compute(rule, volume)?);
        let mut cache = self.tables.write().expect("table cache poisoned");
        let entry = cache.entry(rule.clone()).or_insert_with(|| table.clone());
        if entry.frontier() < table.frontier() {
            *entry = table.clone();
        }
        Ok(table)
    }
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        ApiError { status, message: message.into() }
    }

    fn unprocessable(message: impl Into<String>) -> Self {
        Self::new(StatusCode::UNPROCESSABLE_ENTITY, message)
    }
}

impl From<ChompError> for ApiError {
    fn from(e: ChompError) -> Self {
        let status = match e {
            ChompError::PositionSyntax(_)
            | ChompError::RuleSyntax(_)
            | ChompError::NotMonotone(_)
            | ChompError::EmptyRule
            | ChompError::DuplicateScore(_)
            | ChompError::NonFiniteScore(_)
            | ChompError::NotPermutation(..) => StatusCode::BAD_REQUEST,
            _ => StatusCode::UNPROCESSABLE_ENTITY,
        };
        ApiError::new(status, e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(serde_json::json!({ "error": self.message }))).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

/// Rules arrive either as text (`0,1,3,2`) or as a score array.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum RuleInput {
    Text(String),
    Scores(Vec<f64>),
}

impl RuleInput {
    fn normalize(&self) -> Result<NormalizedRule, ChompError> {
        match self {
            RuleInput::Text(s) => s.parse(),
            RuleInput::Scores(v) => Ok(Rule::new(v.clone())?.normalize()),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum PositionInput {
    Text(String),
    Parts(Vec<u32>),
}

impl PositionInput {
    fn parse(&self) -> Result<Position, ChompError> {
        match self {
            PositionInput::Text(s) => s.parse(),
            PositionInput::Parts(v) => Position::canonicalize(v),
        }
    }
}

#[derive(Debug, Deserialize)]
struct SolveQuery {
    rule: String,
    position: String,
}

#[derive(Debug, Deserialize)]
struct TableQuery {
    rule: String,
    volume: u32,
    format: Option<String>,
}

#[derive(Debug, Deserialize)]
struct IsoQuery {
    f: String,
    g: String,
    volume: Option<u32>,
}

#[derive(Debug, Deserialize)]
struct NormalizeQuery {
    scores: String,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NewGame {
    rule: RuleInput,
    position: PositionInput,
    #[serde(default)]
    human_seats: Vec<usize>,
}

#[derive(Debug, Deserialize)]
pub struct MoveRequest {
    row: u32,
    col: u32,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GameState {
    pub id: u64,
    pub rule: NormalizedRule,
    pub seats: Vec<Seat>,
    pub start: Position,
    pub position: Position,
    pub to_move: Option<usize>,
    pub finished: bool,
    pub ordinal: u8,
    pub solutions: Vec<Position>,
    pub moves: Vec<MoveRecord>,
    pub final_scores: Option<Vec<u8>>,
}

fn game_state(id: u64, session: &GameSession) -> Result<GameState, ApiError> {
    let table = session.table();
    let transcript = session.transcript();
    Ok(GameState {
        id,
        rule: session.rule().clone(),
        seats: session.seats().to_vec(),
        start: transcript.start,
        position: session.position().clone(),
        to_move: (!session.is_finished()).then(|| session.to_move()),
        finished: session.is_finished(),
        ordinal: table.ordinal(session.position())?,
        solutions: table.solutions(session.position())?,
        moves: transcript.moves,
        final_scores: session.final_scores(),
    })
}

async fn solve(State(state): State<Arc<AppState>>, Query(q): Query<SolveQuery>) -> ApiResult<SolveReport> {
    let rule: NormalizedRule = q.rule.parse()?;
    let position: Position = q.position.parse()?;
    let table = state.table_for(&rule, position.volume())?;
    Ok(Json(report::solve_with(&table, &position)?))
}

async fn table(State(state): State<Arc<AppState>>, Query(q): Query<TableQuery>) -> Result<Response, ApiError> {
    let rule: NormalizedRule = q.rule.parse()?;
    state.check_budget(q.volume)?;
    let table = OrdinalTable::compute(&rule, q.volume)?;
    Ok(match q.format.as_deref() {
        None | Some("json") => ([(header::CONTENT_TYPE, "application/json")], table.to_json()).into_response(),
        Some("csv") => ([(header::CONTENT_TYPE, "text/csv")], table.to_csv()).into_response(),
        Some(other) => return Err(ApiError::new(StatusCode::BAD_REQUEST, format!("unknown format `{other}`"))),
    })
}

async fn iso(State(state): State<Arc<AppState>>, Query(q): Query<IsoQuery>) -> ApiResult<chomp_core::IsoVerdict> {
    let f: NormalizedRule = q.f.parse()?;
    let g: NormalizedRule = q.g.parse()?;
    let volume = q.volume.unwrap_or(12);
    state.check_budget(volume)?;
    Ok(Json(iso_check(&f, &g, volume)?))
}

async fn normalize(Query(q): Query<NormalizeQuery>) -> ApiResult<NormalizedRule> {
    Ok(Json(q.scores.parse::<Rule>()?.normalize()))
}

async fn new_game(State(state): State<Arc<AppState>>, Json(req): Json<NewGame>) -> ApiResult<GameState> {
    let rule = req.rule.normalize()?;
    let start = req.position.parse()?;
    let table = state.table_for(&rule, start.volume())?;
    let mut session = GameSession::new(table, start, &req.human_seats)?;
    session.run_engines()?;
    let id = state.next_id.fetch_add(1, Ordering::Relaxed);
    let body = game_state(id, &session)?;
    state
        .games
        .write()
        .expect("game registry poisoned")
        .insert(id, Arc::new(Mutex::new(session)));
    Ok(Json(body))
}

fn find_game(state: &AppState, id: u64) -> Result<Arc<Mutex<GameSession>>, ApiError> {
    state
        .games
        .read()
        .expect("game registry poisoned")
        .get(&id)
        .cloned()
        .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, format!("no game {id}")))
}

async fn get_game(State(state): State<Arc<AppState>>, Path(id): Path<u64>) -> ApiResult<GameState> {
    let game = find_game(&state, id)?;
    let session = game.lock().expect("game poisoned");
    Ok(Json(game_state(id, &session)?))
}

async fn play_move(
    State(state): State<Arc<AppState>>,
    Path(id): Path<u64>,
    Json(req): Json<MoveRequest>,
) -> ApiResult<GameState> {
    let game = find_game(&state, id)?;
    let mut session = game.lock().expect("game poisoned");
    if session.is_finished() {
        return Err(ApiError::unprocessable("game is over"));
    }
    if !session.awaiting_human() {
        return Err(ApiError::unprocessable(format!("seat {} is an engine seat", session.to_move())));
    }
    session.apply(Cell::new(req.row, req.col))?;
    session.run_engines()?;
    Ok(Json(game_state(id, &session)?))
}

const PLACEHOLDER_INDEX: &str = "<!doctype html>
<html><head><meta charset=\"utf-8\"><title>chomp</title></head>
<body><h1>chomp service</h1>
<p>The explorer UI is not bundled with this server; start it with <code>--ui-dir</code>.</p>
<ul>
<li>GET /api/solve?rule=0,1&amp;position=2,1</li>
<li>GET /api/table?rule=0,1&amp;volume=6</li>
<li>GET /api/iso?f=0,1,2&amp;g=0,2,1&amp;volume=6</li>
<li>GET /api/rules/normalize?scores=10,20</li>
<li>POST /api/game, GET /api/game/{id}, POST /api/game/{id}/move</li>
</ul></body></html>
";

pub fn router(state: Arc<AppState>, ui_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/api/solve", get(solve))
        .route("/api/table", get(table))
        .route("/api/iso", get(iso))
        .route("/api/rules/normalize", get(normalize))
        .route("/api/game", post(new_game))
        .route("/api/game/{id}", get(get_game))
        .route("/api/game/{id}/move", post(play_move))
        .with_state(state);
    match ui_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api.route("/", get(|| async { Html(PLACEHOLDER_INDEX) })),
    }
}

pub async fn serve(port: u16, table_budget: u32, ui_dir: Option<PathBuf>) -> anyhow::Result<()> {
    let listener = tokio::net::TcpListener::bind(("0.0.0.0", port))
        .await
        .map_err(|e| anyhow::anyhow!("cannot bind port {port}: {e}"))?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(AppState::new(table_budget), ui_dir)).await?;
    Ok(())
}
