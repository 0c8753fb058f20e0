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

use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use paradox_core::sentence_dsl::ParseError;
use paradox_core::simulator::SimError;
use serde_json::{json, Value};
use thiserror::Error;

/// Every failure the API reports. Rendered as
/// `{"error": code, "message": text, ...details}`.
#[derive(Debug, Error)]
pub enum ApiError {
    #[error("no session with id {0:?}")]
    UnknownSession(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("{0}")]
    InvalidRequest(String),
    #[error("no route for {0}")]
    NotFound(String),
    #[error("method not allowed")]
    MethodNotAllowed,
}

impl ApiError {
    pub fn status(&self) -> StatusCode {
        match self {
            ApiError::UnknownSession(_) | ApiError::NotFound(_) => StatusCode::NOT_FOUND,
            ApiError::MethodNotAllowed => StatusCode::METHOD_NOT_ALLOWED,
            ApiError::Sim(SimError::ZeroAmplitudeOutcome { .. }) => StatusCode::CONFLICT,
            ApiError::Sim(SimError::Quantization(_)) => StatusCode::UNPROCESSABLE_ENTITY,
            _ => StatusCode::BAD_REQUEST,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            ApiError::UnknownSession(_) => "unknown_session",
            ApiError::Parse(_) => "parse_error",
            ApiError::Sim(e) => match e {
                SimError::ZeroAmplitudeOutcome { .. } => "zero_amplitude_outcome",
                SimError::UnknownSentence { .. } => "unknown_sentence",
                SimError::NegativeDuration(_) | SimError::NonFiniteDuration => "invalid_duration",
                SimError::BadRange(_) => "invalid_range",
                SimError::Quantization(_) => "unsupported_system",
            },
            ApiError::InvalidRequest(_) => "invalid_request",
            ApiError::NotFound(_) => "not_found",
            ApiError::MethodNotAllowed => "method_not_allowed",
        }
    }

    pub fn body(&self) -> Value {
        let mut body = json!({ "error": self.code(), "message": self.to_string() });
        if let ApiError::Parse(e) = self {
            body["kind"] = json!(e.kind());
            if let Some(line) = e.line() {
                body["line"] = json!(line);
            }
        }
        body
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status(), Json(self.body())).into_response()
    }
}

impl From<JsonRejection> for ApiError {
    fn from(rejection: JsonRejection) -> Self {
        ApiError::InvalidRequest(rejection.body_text())
    }
}

impl From<QueryRejection> for ApiError {
    fn from(rejection: QueryRejection) -> Self {
        ApiError::InvalidRequest(rejection.body_text())
    }
}
