// Copyright 2026 The Paradox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! JSON API over [`SessionStore`].
//!
//! | method | path                          | body / query                 |
//! |--------|-------------------------------|------------------------------|
//! | POST   | `/api/sessions`               | `{"dsl"}`                    |
//! | GET    | `/api/sessions/{id}`          |                              |
//! | POST   | `/api/sessions/{id}/measure`  | `{"sentence","value","seed"}`|
//! | POST   | `/api/sessions/{id}/evolve`   | `{"dt"}` or `{"steps"}`      |
//! | POST   | `/api/sessions/{id}/release`  |                              |
//! | GET    | `/api/sessions/{id}/trace`    | `t0, t1, dt, format`         |
//! | GET    | `/api/sessions/{id}/model`    |                              |

use std::path::Path;
use std::sync::Arc;

use axum::extract::{FromRequest, FromRequestParts, Path as UrlPath, State};
use axum::http::{header, StatusCode, Uri};
use axum::response::{IntoResponse, Response};
use axum::routing::{any, get, post};
use axum::{Json, Router};
use paradox_core::inference::{classify, TruthToken, Verdict, MAX_CLASSIFY};
use paradox_core::numerics::StateVector;
use paradox_core::sentence_dsl::parse;
use paradox_core::simulator::{create_session, Event, Outcome, Session};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use tower_http::services::ServeDir;

use crate::error::ApiError;
use crate::store::SessionStore;

/// A simulator session plus what the API reports about its system.
pub struct ApiSession {
    pub session: Session,
    /// `None` when the system is too large to classify.
    pub verdict: Option<Verdict>,
}

pub type Store = SessionStore<ApiSession>;

#[derive(FromRequest)]
#[from_request(via(axum::Json), rejection(ApiError))]
struct ApiJson<T>(T);

#[derive(FromRequestParts)]
#[from_request(via(axum::extract::Query), rejection(ApiError))]
struct ApiQuery<T>(T);

/// The API router, plus static files from `static_dir` outside `/api`.
pub fn app(store: Arc<Store>, static_dir: Option<&Path>) -> Router {
    let api = Router::new()
        .route("/api/sessions", post(create_session_handler))
        .route("/api/sessions/{id}", get(show))
        .route("/api/sessions/{id}/measure", post(measure))
        .route("/api/sessions/{id}/evolve", post(evolve))
        .route("/api/sessions/{id}/release", post(release))
        .route("/api/sessions/{id}/trace", get(trace))
        .route("/api/sessions/{id}/model", get(model))
        .route("/api", any(not_found))
        .route("/api/{*rest}", any(not_found))
        .method_not_allowed_fallback(method_not_allowed)
        .with_state(store);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api.fallback(not_found),
    }
}

async fn not_found(uri: Uri) -> ApiError {
    ApiError::NotFound(uri.path().to_string())
}

async fn method_not_allowed() -> ApiError {
    ApiError::MethodNotAllowed
}

#[derive(Debug, Serialize)]
pub struct SessionView {
    pub id: String,
    pub verdict: Option<Verdict>,
    pub dim: usize,
    pub sentence_count: usize,
    pub cycle: Vec<TruthToken>,
    pub time: f64,
    pub probabilities: Map<String, Value>,
    pub state: StateVector,
    pub log: Vec<Event>,
}

impl SessionView {
    fn new(id: &str, entry: &ApiSession) -> Self {
        let s = &entry.session;
        SessionView {
            id: id.to_string(),
            verdict: entry.verdict,
            dim: s.model().dim(),
            sentence_count: s.model().sentence_count(),
            cycle: s.model().basis_labels().to_vec(),
            time: s.time(),
            probabilities: s
                .probabilities()
                .into_iter()
                .map(|(token, p)| (token.to_string(), Value::from(p)))
                .collect(),
            state: s.state().clone(),
            log: s.log().to_vec(),
        }
    }
}

fn with_session<R>(
    store: &Store,
    id: &str,
    f: impl FnOnce(&mut ApiSession) -> Result<R, ApiError>,
) -> Result<R, ApiError> {
    let handle = store
        .get(id)
        .ok_or_else(|| ApiError::UnknownSession(id.to_string()))?;
    let mut guard = handle.lock();
    f(&mut guard)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CreateBody {
    dsl: String,
}

async fn create_session_handler(
    State(store): State<Arc<Store>>,
    ApiJson(body): ApiJson<CreateBody>,
) -> Result<(StatusCode, Json<SessionView>), ApiError> {
    let system = parse(&body.dsl)?;
    let verdict = if system.len() <= MAX_CLASSIFY {
        classify(&system).ok().map(|c| c.verdict)
    } else {
        None
    };
    let entry = ApiSession {
        session: create_session(&system)?,
        verdict,
    };
    let view = SessionView::new("", &entry);
    let id = store.insert(entry);
    Ok((StatusCode::CREATED, Json(SessionView { id, ..view })))
}

async fn show(
    State(store): State<Arc<Store>>,
    UrlPath(id): UrlPath<String>,
) -> Result<Json<SessionView>, ApiError> {
    with_session(&store, &id, |s| Ok(Json(SessionView::new(&id, s))))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasureBody {
    sentence: usize,
    value: String,
    seed: Option<u64>,
}

#[derive(Debug, Serialize)]
pub struct MeasureView {
    pub outcome: Outcome,
    pub probability: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(flatten)]
    pub session: SessionView,
}

async fn measure(
    State(store): State<Arc<Store>>,
    UrlPath(id): UrlPath<String>,
    ApiJson(body): ApiJson<MeasureBody>,
) -> Result<Json<MeasureView>, ApiError> {
    let (outcome, seed) = match body.value.as_str() {
        "true" => (Some(Outcome::True), None),
        "false" => (Some(Outcome::False), None),
        "sample" => (None, Some(body.seed.unwrap_or_else(rand::random))),
        other => {
            return Err(ApiError::InvalidRequest(format!(
                "value must be \"true\", \"false\" or \"sample\", got {other:?}"
            )))
        }
    };
    with_session(&store, &id, |s| {
        let (outcome, probability) = match (outcome, seed) {
            (Some(o), _) => (o, s.session.hypothesize(body.sentence, o == Outcome::True)?),
            (None, Some(seed)) => {
                let r = s.session.measure_sample(body.sentence, seed)?;
                (r.outcome, r.probability)
            }
            (None, None) => unreachable!("sample always carries a seed"),
        };
        Ok(Json(MeasureView {
            outcome,
            probability,
            seed,
            session: SessionView::new(&id, s),
        }))
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EvolveBody {
    dt: Option<f64>,
    steps: Option<u32>,
}

async fn evolve(
    State(store): State<Arc<Store>>,
    UrlPath(id): UrlPath<String>,
    ApiJson(body): ApiJson<EvolveBody>,
) -> Result<Json<SessionView>, ApiError> {
    with_session(&store, &id, |s| {
        match (body.dt, body.steps) {
            (Some(dt), None) => s.session.evolve(dt)?,
            (None, Some(steps)) => s.session.evolve_steps(steps)?,
            _ => {
                return Err(ApiError::InvalidRequest(
                    "body must contain exactly one of \"dt\" or \"steps\"".into(),
                ))
            }
        }
        Ok(Json(SessionView::new(&id, s)))
    })
}

async fn release(
    State(store): State<Arc<Store>>,
    UrlPath(id): UrlPath<String>,
) -> Result<Json<SessionView>, ApiError> {
    with_session(&store, &id, |s| {
        s.session.release();
        Ok(Json(SessionView::new(&id, s)))
    })
}

#[derive(Deserialize, Default, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum TraceFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TraceQuery {
    #[serde(default)]
    t0: f64,
    t1: f64,
    dt: f64,
    #[serde(default)]
    format: TraceFormat,
}

async fn trace(
    State(store): State<Arc<Store>>,
    UrlPath(id): UrlPath<String>,
    ApiQuery(q): ApiQuery<TraceQuery>,
) -> Result<Response, ApiError> {
    let table = with_session(&store, &id, |s| Ok(s.session.trace(q.t0, q.t1, q.dt)?))?;
    Ok(match q.format {
        TraceFormat::Json => Json(table).into_response(),
        TraceFormat::Csv => (
            [(header::CONTENT_TYPE, "text/csv; charset=utf-8")],
            table.to_csv(),
        )
            .into_response(),
    })
}

async fn model(
    State(store): State<Arc<Store>>,
    UrlPath(id): UrlPath<String>,
) -> Result<Response, ApiError> {
    let model = with_session(&store, &id, |s| Ok(s.session.shared_model()))?;
    Ok(Json(&*model).into_response())
}
