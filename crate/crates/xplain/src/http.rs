//! The JSON session API under `/v1`.

use std::sync::Arc;

use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use xplain_core::dialogue::{ArgId, CqId, DialogueError, Session};

use crate::config::Config;
use crate::load::{load, LoadError, Source};
use crate::store::{Store, StoreError};
use crate::wire::{self, ArgumentDoc, CqDoc, PropertiesDoc, VerdictDoc};

pub struct AppState {
    pub store: Store,
    pub config: Config,
}

impl AppState {
    pub fn new(config: Config) -> Arc<Self> {
        Arc::new(AppState { store: Store::new(config.ttl, config.lock_timeout), config })
    }
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/v1/sessions", post(create))
        .route("/v1/sessions/{id}", get(show).delete(remove))
        .route("/v1/sessions/{id}/arguments/{aid}", get(argument))
        .route("/v1/sessions/{id}/arguments/{aid}/cqs", get(cqs))
        .route("/v1/sessions/{id}/arguments/{aid}/cqs/{n}", post(ask))
        .route("/v1/sessions/{id}/cqs/{cqid}/answer", post(answer))
        .route("/v1/sessions/{id}/af", get(af))
        .route("/v1/sessions/{id}/properties", get(properties))
        .route("/v1/sessions/{id}/accept", post(accept))
        .with_state(state)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ErrorDoc {
    pub error: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<Source>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub col: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictDoc>,
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    doc: ErrorDoc,
}

impl ApiError {
    fn new(status: StatusCode, error: &str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            doc: ErrorDoc { error: error.into(), message: message.into(), file: None, line: None, col: None, verdict: None },
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.doc)).into_response()
    }
}

impl From<StoreError> for ApiError {
    fn from(e: StoreError) -> Self {
        let (status, code) = match e {
            StoreError::NotFound => (StatusCode::NOT_FOUND, "not_found"),
            StoreError::Gone => (StatusCode::GONE, "gone"),
            StoreError::Busy => (StatusCode::CONFLICT, "busy"),
        };
        ApiError::new(status, code, e.to_string())
    }
}

impl From<DialogueError> for ApiError {
    fn from(e: DialogueError) -> Self {
        let message = e.to_string();
        match e {
            DialogueError::UnknownArgument(_) | DialogueError::UnknownCq(_) => {
                ApiError::new(StatusCode::NOT_FOUND, "not_found", message)
            }
            DialogueError::NotAvailable { .. } => ApiError::new(StatusCode::BAD_REQUEST, "not_available", message),
            DialogueError::Unanswerable { .. } => ApiError::new(StatusCode::BAD_REQUEST, "unanswerable", message),
            DialogueError::NoTrace => ApiError::new(StatusCode::BAD_REQUEST, "no_trace", message),
            DialogueError::NoSummary(v) => {
                let mut err = ApiError::new(StatusCode::BAD_REQUEST, "not_a_solution", message);
                err.doc.verdict = Some(wire::verdict_doc(&v));
                err
            }
        }
    }
}

impl From<LoadError> for ApiError {
    fn from(e: LoadError) -> Self {
        let message = e.to_string();
        match e {
            LoadError::Parse { file, error } => {
                let mut err = ApiError::new(StatusCode::BAD_REQUEST, "parse", message);
                err.doc.file = Some(file);
                err.doc.line = Some(error.pos.line);
                err.doc.col = Some(error.pos.col);
                err
            }
            LoadError::Ground(_) => ApiError::new(StatusCode::BAD_REQUEST, "too_large", message),
        }
    }
}

type ApiResult<T> = Result<T, ApiError>;

fn arg_id(s: &str) -> ApiResult<ArgId> {
    s.parse().map_err(|_| ApiError::new(StatusCode::NOT_FOUND, "not_found", format!("no argument {s}")))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CreateRequest {
    pub domain: String,
    pub problem: String,
    pub plan: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CreatedDoc {
    pub session_id: String,
    pub verdict: VerdictDoc,
    pub summary_argument: ArgumentDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionDoc {
    pub session_id: String,
    pub verdict: VerdictDoc,
    pub summary_argument: Option<ArgumentDoc>,
    pub arguments: Vec<ArgumentDoc>,
    pub questions: Vec<CqDoc>,
    pub accepted: bool,
}

async fn create(State(app): State<Arc<AppState>>, Json(req): Json<CreateRequest>) -> ApiResult<impl IntoResponse> {
    let (problem, plan) = load(&req.domain, &req.problem, &req.plan, &app.config.ground)?;
    let session = Session::new(problem, plan).with_goal_bound(app.config.goal_bound);
    let Some(summary) = session.summary() else {
        return Err(DialogueError::NoSummary(session.verdict().clone()).into());
    };
    let doc = CreatedDoc {
        session_id: String::new(),
        verdict: wire::verdict_doc(session.verdict()),
        summary_argument: wire::session_argument_doc(&session, summary).expect("summary exists"),
    };
    let id = app.store.insert(session);
    let location = format!("/v1/sessions/{id}");
    Ok((StatusCode::CREATED, [(header::LOCATION, location)], Json(CreatedDoc { session_id: id, ..doc })))
}

async fn show(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult<Json<SessionDoc>> {
    let s = app.store.lock(&id).await?;
    Ok(Json(SessionDoc {
        session_id: id,
        verdict: wire::verdict_doc(s.verdict()),
        summary_argument: s.summary().and_then(|a| wire::session_argument_doc(&s, a)),
        arguments: s.arguments().iter().filter_map(|a| wire::session_argument_doc(&s, a.id)).collect(),
        questions: s.questions().iter().map(|q| wire::question_doc(&s, q)).collect(),
        accepted: s.is_accepted(),
    }))
}

async fn remove(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult<StatusCode> {
    // Wait for in-flight work on the session before dropping it.
    drop(app.store.lock(&id).await?);
    app.store.remove(&id)?;
    Ok(StatusCode::NO_CONTENT)
}

async fn argument(State(app): State<Arc<AppState>>, Path((id, aid)): Path<(String, String)>) -> ApiResult<Json<ArgumentDoc>> {
    let s = app.store.lock(&id).await?;
    let aid = arg_id(&aid)?;
    s.argument(aid)?;
    Ok(Json(wire::session_argument_doc(&s, aid).expect("checked above")))
}

async fn cqs(State(app): State<Arc<AppState>>, Path((id, aid)): Path<(String, String)>) -> ApiResult<Json<Vec<CqDoc>>> {
    let s = app.store.lock(&id).await?;
    let aid = arg_id(&aid)?;
    let list = s.available(aid)?;
    Ok(Json(list.iter().enumerate().map(|(n, (c, q))| wire::candidate_doc(&s, aid, n, c, *q)).collect()))
}

/// Asks the `n`th (1-based) question available on an argument.
async fn ask(
    State(app): State<Arc<AppState>>,
    Path((id, aid, n)): Path<(String, String, String)>,
) -> ApiResult<Json<CqDoc>> {
    let mut s = app.store.lock(&id).await?;
    let aid = arg_id(&aid)?;
    let q = ask_nth(&mut s, aid, &n)?;
    let node = s.question(q)?.clone();
    Ok(Json(wire::question_doc(&s, &node)))
}

fn ask_nth(s: &mut Session, aid: ArgId, n: &str) -> ApiResult<CqId> {
    let list = s.available(aid)?;
    let pick = n
        .parse::<usize>()
        .ok()
        .and_then(|n| n.checked_sub(1))
        .and_then(|i| list.get(i))
        .ok_or_else(|| {
            ApiError::new(
                StatusCode::NOT_FOUND,
                "not_found",
                format!("{aid} has questions 1 to {}, not {n}", list.len()),
            )
        })?;
    let subject = pick.0.subject.clone();
    Ok(s.ask(aid, &subject)?)
}

/// `cqid` is an asked question (`Q2`), an available one (`A1.3`) or `plan`.
async fn answer(
    State(app): State<Arc<AppState>>,
    Path((id, cqid)): Path<(String, String)>,
) -> ApiResult<Json<ArgumentDoc>> {
    let mut s = app.store.lock(&id).await?;
    let q = if cqid == "plan" {
        s.ask_plan()
    } else if let Some((aid, n)) = cqid.split_once('.') {
        ask_nth(&mut s, arg_id(aid)?, n)?
    } else {
        let q: CqId = cqid
            .parse()
            .map_err(|_| ApiError::new(StatusCode::NOT_FOUND, "not_found", format!("no question {cqid}")))?;
        s.question(q)?;
        q
    };
    let a = s.answer(q)?;
    Ok(Json(wire::session_argument_doc(&s, a).expect("answer exists")))
}

#[derive(Debug, Deserialize)]
struct AfQuery {
    format: Option<String>,
}

async fn af(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    Query(q): Query<AfQuery>,
) -> ApiResult<Response> {
    let s = app.store.lock(&id).await?;
    match q.format.as_deref().unwrap_or("structured") {
        "structured" => Ok(Json(wire::af_doc(&s)).into_response()),
        "dot" => Ok(([(header::CONTENT_TYPE, "text/vnd.graphviz")], xplain_core::dialogue::to_dot(&s)).into_response()),
        other => Err(ApiError::new(
            StatusCode::BAD_REQUEST,
            "unknown_format",
            format!("unknown format {other}; use structured or dot"),
        )),
    }
}

#[derive(Debug, Deserialize)]
struct PropertiesQuery {
    #[serde(default)]
    materialize: bool,
}

/// Evaluated on a copy, so reading the properties never changes the session.
async fn properties(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    Query(q): Query<PropertiesQuery>,
) -> ApiResult<Json<PropertiesDoc>> {
    let mut copy = app.store.lock(&id).await?.clone();
    let report = copy.check_properties(q.materialize)?;
    Ok(Json(wire::properties_doc(&report)))
}

async fn accept(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult<Json<PropertiesDoc>> {
    let mut s = app.store.lock(&id).await?;
    s.mark_accepted();
    let report = s.clone().check_properties(false)?;
    Ok(Json(wire::properties_doc(&report)))
}

/// Serves until the process is stopped, sweeping expired sessions once a minute.
pub async fn serve(config: Config) -> std::io::Result<()> {
    let state = AppState::new(config.clone());
    let sweeper = state.clone();
    tokio::spawn(async move {
        let mut tick = tokio::time::interval(std::time::Duration::from_secs(60));
        loop {
            tick.tick().await;
            sweeper.store.sweep();
        }
    });
    let listener = tokio::net::TcpListener::bind(("0.0.0.0", config.port)).await?;
    eprintln!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(state)).await
}
