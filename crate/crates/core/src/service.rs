// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! HTTP front end: the client sends a game description, the solver runs
//! here, and the report comes back.
//!
//! All bodies are JSON.
//!
//! * `POST /api/solve` takes `{"game": "...", "algorithm": "enum"|"lh"|"lemke", ...}`
//!   with the fields of [`SolveOptions`] plus `format`, `input_mode`,
//!   `session` and `timeout_ms`. It answers with a [`SolveResponse`].
//! * `POST /api/convert` takes `{"game": "...", "target": "strategic"|"sequence"|"xml"}`
//!   and answers with a [`ConvertResponse`].
//! * `GET /api/health` reports the job counters.
//!
//! Status codes: 400 for unreadable games, 422 for games outside the
//! engine's reach (more than two players, imperfect recall), 408 when the
//! time limit is hit, 500 for internal failures.

use std::future::Future;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::Duration;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use tokio::net::TcpListener;
use tokio::sync::Semaphore;

use crate::cancel::CancelToken;
use crate::error::{Error, Result};
use crate::solve::{self, classify, ErrorClass, Format, SolveOptions, Structured, Target};
use crate::strategic::InputMode;

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    /// Jobs running at once; further requests wait for a slot.
    pub workers: usize,
    /// Upper bound on the time a request may take, queueing included.
    pub timeout: Duration,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            workers: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            timeout: Duration::from_secs(120),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct SolveRequest {
    pub game: String,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub input_mode: InputMode,
    /// Echoed back so a client can match answers to its sessions.
    #[serde(default)]
    pub session: Option<String>,
    /// Shorter limit than the server's, if wanted.
    #[serde(default)]
    pub timeout_ms: Option<u64>,
    #[serde(flatten)]
    pub options: SolveOptions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
    Timeout,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResponse {
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub session: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report_text: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structured: Option<Structured>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ConvertRequest {
    pub game: String,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub input_mode: InputMode,
    pub target: Target,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvertResponse {
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Health {
    pub active_jobs: usize,
    pub workers: usize,
    pub completed: u64,
}

struct AppState {
    config: ServiceConfig,
    slots: Arc<Semaphore>,
    active: AtomicUsize,
    completed: AtomicU64,
}

/// Decrements the active count when the job really ends, even if the
/// request that started it is long gone.
struct ActiveJob(Arc<AppState>);

impl Drop for ActiveJob {
    fn drop(&mut self) {
        self.0.active.fetch_sub(1, Ordering::SeqCst);
        self.0.completed.fetch_add(1, Ordering::SeqCst);
    }
}

/// Stops the job if the request future is dropped (client went away).
struct CancelOnDrop(CancelToken);

impl Drop for CancelOnDrop {
    fn drop(&mut self) {
        self.0.cancel();
    }
}

pub fn router(config: ServiceConfig) -> Router {
    let state = Arc::new(AppState {
        slots: Arc::new(Semaphore::new(config.workers.max(1))),
        config,
        active: AtomicUsize::new(0),
        completed: AtomicU64::new(0),
    });
    Router::new()
        .route("/api/solve", post(solve_handler))
        .route("/api/convert", post(convert_handler))
        .route("/api/health", get(health_handler))
        .with_state(state)
}

/// Serves until `shutdown` resolves.
pub async fn serve(
    listener: TcpListener,
    config: ServiceConfig,
    shutdown: impl Future<Output = ()> + Send + 'static,
) -> std::io::Result<()> {
    axum::serve(listener, router(config))
        .with_graceful_shutdown(shutdown)
        .await
}

/// Runs `job` on the blocking pool once a slot is free. The limit covers
/// the wait for a slot.
async fn run_job<T: Send + 'static>(
    state: &Arc<AppState>,
    limit: Duration,
    job: impl FnOnce(&CancelToken) -> Result<T> + Send + 'static,
) -> Result<T> {
    let token = CancelToken::with_timeout(limit);
    let _guard = CancelOnDrop(token.clone());
    let work = async {
        let permit = Arc::clone(&state.slots)
            .acquire_owned()
            .await
            .map_err(|e| Error::Internal(e.to_string()))?;
        state.active.fetch_add(1, Ordering::SeqCst);
        let active = ActiveJob(Arc::clone(state));
        let token = token.clone();
        tokio::task::spawn_blocking(move || {
            let _permit = permit;
            let _active = active;
            job(&token)
        })
        .await
        .map_err(|e| Error::Internal(format!("solver task failed: {e}")))?
    };
    match tokio::time::timeout(limit, work).await {
        Ok(r) => r,
        Err(_) => Err(Error::Timeout),
    }
}

fn status_of(e: &Error) -> (StatusCode, Status) {
    match classify(e) {
        ErrorClass::Input => (StatusCode::BAD_REQUEST, Status::Error),
        ErrorClass::Unsupported => (StatusCode::UNPROCESSABLE_ENTITY, Status::Error),
        ErrorClass::Timeout => (StatusCode::REQUEST_TIMEOUT, Status::Timeout),
        ErrorClass::Internal => (StatusCode::INTERNAL_SERVER_ERROR, Status::Error),
    }
}

fn parse_body<T: serde::de::DeserializeOwned>(body: &[u8]) -> Result<T> {
    serde_json::from_slice(body).map_err(|e| Error::Parse(format!("request body: {e}")))
}

async fn solve_handler(State(state): State<Arc<AppState>>, body: Bytes) -> Response {
    let req: SolveRequest = match parse_body(&body) {
        Ok(r) => r,
        Err(e) => return solve_error(None, &e),
    };
    let limit = req
        .timeout_ms
        .map(Duration::from_millis)
        .map_or(state.config.timeout, |t| t.min(state.config.timeout));
    let session = req.session.clone();
    let result = run_job(&state, limit, move |cancel| {
        let doc = solve::load_game(&req.game, req.format, req.input_mode)?;
        let opts = SolveOptions {
            threads: 1,
            ..req.options
        };
        solve::solve(&doc, &opts, cancel)
    })
    .await;
    match result {
        Ok(out) => Json(SolveResponse {
            status: Status::Ok,
            session,
            report_text: Some(out.text),
            structured: Some(out.structured),
            error: None,
        })
        .into_response(),
        Err(e) => solve_error(session, &e),
    }
}

fn solve_error(session: Option<String>, e: &Error) -> Response {
    let (code, status) = status_of(e);
    let body = SolveResponse {
        status,
        session,
        report_text: None,
        structured: None,
        error: Some(e.to_string()),
    };
    (code, Json(body)).into_response()
}

async fn convert_handler(State(state): State<Arc<AppState>>, body: Bytes) -> Response {
    let result = match parse_body::<ConvertRequest>(&body) {
        Ok(req) => {
            run_job(&state, state.config.timeout, move |_| {
                let doc = solve::load_game(&req.game, req.format, req.input_mode)?;
                solve::convert(&doc, req.target)
            })
            .await
        }
        Err(e) => Err(e),
    };
    match result {
        Ok(text) => Json(ConvertResponse {
            status: Status::Ok,
            text: Some(text),
            error: None,
        })
        .into_response(),
        Err(e) => {
            let (code, status) = status_of(&e);
            let body = ConvertResponse {
                status,
                text: None,
                error: Some(e.to_string()),
            };
            (code, Json(body)).into_response()
        }
    }
}

async fn health_handler(State(state): State<Arc<AppState>>) -> Json<Health> {
    Json(Health {
        active_jobs: state.active.load(Ordering::SeqCst),
        workers: state.config.workers.max(1),
        completed: state.completed.load(Ordering::SeqCst),
    })
}
