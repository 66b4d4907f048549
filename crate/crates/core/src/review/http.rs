//! JSON-over-HTTP surface for the browser review UI.
//!
//! | method | path                               |
//! |--------|------------------------------------|
//! | POST   | `/api/sessions`                    |
//! | GET    | `/api/sessions`                    |
//! | GET    | `/api/sessions/{id}`               |
//! | GET    | `/api/sessions/{id}/candidates`    |
//! | POST   | `/api/sessions/{id}/decisions`     |
//! | GET    | `/api/sessions/{id}/export`        |
//! | GET/POST | `/api/score`                     |

use std::future::Future;
use std::sync::{Arc, RwLock};

use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use tokio::net::TcpListener;

use super::store::{dataset_tsv, ReviewSession, ReviewStore, SessionCandidate};
use crate::error::Error;
use crate::scoring::{score_text, Resources, TitleReport};
use crate::substitution::{Decision, ReviewStatus};
use crate::text::Title;

#[derive(Clone)]
pub struct AppState {
    resources: Arc<Resources>,
    store: Arc<RwLock<ReviewStore>>,
}

impl AppState {
    pub fn new(store: ReviewStore) -> AppState {
        AppState {
            resources: Arc::clone(store.resources()),
            store: Arc::new(RwLock::new(store)),
        }
    }
}

pub struct ApiError(Error);

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        ApiError(e)
    }
}

#[derive(Serialize)]
struct ErrorBody {
    error: &'static str,
    message: String,
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, kind) = match &self.0 {
            Error::UnknownSession(_) => (StatusCode::NOT_FOUND, "UnknownSession"),
            Error::UnknownCandidate(_) => (StatusCode::NOT_FOUND, "UnknownCandidate"),
            Error::AlreadyReviewed(_) => (StatusCode::CONFLICT, "AlreadyReviewed"),
            Error::ResourceMissing(_) => (StatusCode::SERVICE_UNAVAILABLE, "ResourceMissing"),
            Error::Invalid(_) => (StatusCode::BAD_REQUEST, "Invalid"),
            _ => (StatusCode::INTERNAL_SERVER_ERROR, "Internal"),
        };
        let body = ErrorBody {
            error: kind,
            message: self.0.to_string(),
        };
        (status, Json(body)).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

#[derive(Deserialize)]
#[serde(untagged)]
enum TitleInput {
    Text(String),
    Record { id: Option<String>, text: String },
}

#[derive(Deserialize)]
struct CreateSession {
    titles: Vec<TitleInput>,
}

#[derive(Serialize)]
struct SessionListing {
    session_id: String,
    titles: usize,
    candidates: usize,
    pending: usize,
}

#[derive(Deserialize)]
struct StatusFilter {
    status: Option<ReviewStatus>,
}

#[derive(Deserialize)]
struct DecisionBody {
    candidate_id: String,
    decision: Decision,
}

#[derive(Deserialize)]
struct ScoreQuery {
    text: String,
}

fn read(state: &AppState) -> std::sync::RwLockReadGuard<'_, ReviewStore> {
    state.store.read().unwrap_or_else(|e| e.into_inner())
}

fn write(state: &AppState) -> std::sync::RwLockWriteGuard<'_, ReviewStore> {
    state.store.write().unwrap_or_else(|e| e.into_inner())
}

async fn create_session(State(state): State<AppState>, Json(body): Json<CreateSession>) -> ApiResult<(StatusCode, Json<ReviewSession>)> {
    let titles = body
        .titles
        .into_iter()
        .enumerate()
        .map(|(i, t)| match t {
            TitleInput::Text(text) => Title::new(format!("t{}", i + 1), text),
            TitleInput::Record { id, text } => Title::new(id.unwrap_or_else(|| format!("t{}", i + 1)), text),
        })
        .collect();
    let mut store = write(&state);
    let session = store.create_session(titles)?.clone();
    Ok((StatusCode::CREATED, Json(session)))
}

async fn list_sessions(State(state): State<AppState>) -> Json<Vec<SessionListing>> {
    let store = read(&state);
    Json(
        store
            .sessions()
            .map(|s| SessionListing {
                session_id: s.session_id.clone(),
                titles: s.titles.len(),
                candidates: s.candidates.len(),
                pending: s.candidates_with(Some(ReviewStatus::Pending)).len(),
            })
            .collect(),
    )
}

async fn get_session(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<Json<ReviewSession>> {
    Ok(Json(read(&state).session(&id)?.clone()))
}

async fn list_candidates(
    State(state): State<AppState>,
    Path(id): Path<String>,
    Query(filter): Query<StatusFilter>,
) -> ApiResult<Json<Vec<SessionCandidate>>> {
    let store = read(&state);
    let session = store.session(&id)?;
    Ok(Json(session.candidates_with(filter.status).into_iter().cloned().collect()))
}

async fn post_decision(
    State(state): State<AppState>,
    Path(id): Path<String>,
    Json(body): Json<DecisionBody>,
) -> ApiResult<Json<SessionCandidate>> {
    let updated = write(&state).record_decision(&id, &body.candidate_id, body.decision)?;
    Ok(Json(updated))
}

async fn export(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<Response> {
    let rows = read(&state).export_dataset(&id)?;
    Ok((
        [(header::CONTENT_TYPE, "text/tab-separated-values; charset=utf-8")],
        dataset_tsv(&rows),
    )
        .into_response())
}

async fn score_get(State(state): State<AppState>, Query(q): Query<ScoreQuery>) -> Json<TitleReport> {
    Json(score_text(&q.text, &state.resources))
}

async fn score_post(State(state): State<AppState>, Json(q): Json<ScoreQuery>) -> Json<TitleReport> {
    Json(score_text(&q.text, &state.resources))
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/api/sessions", post(create_session).get(list_sessions))
        .route("/api/sessions/{id}", get(get_session))
        .route("/api/sessions/{id}/candidates", get(list_candidates))
        .route("/api/sessions/{id}/decisions", post(post_decision))
        .route("/api/sessions/{id}/export", get(export))
        .route("/api/score", get(score_get).post(score_post))
        .with_state(state)
}

/// Serve until `shutdown` resolves.
pub async fn serve<F>(listener: TcpListener, state: AppState, shutdown: F) -> std::io::Result<()>
where
    F: Future<Output = ()> + Send + 'static,
{
    axum::serve(listener, router(state))
        .with_graceful_shutdown(shutdown)
        .await
}
