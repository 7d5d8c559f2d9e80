use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use ecn_core::Error;
use serde_json::json;

/// An error response: `{"error": message}` with the mapped status.
#[derive(Debug)]
pub struct ApiError {
    pub status: StatusCode,
    pub message: String,
}

impl ApiError {
    pub fn new(status: StatusCode, message: impl Into<String>) -> Self {
        ApiError {
            status,
            message: message.into(),
        }
    }

    pub fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, message)
    }

    pub fn not_found(message: impl Into<String>) -> Self {
        Self::new(StatusCode::NOT_FOUND, message)
    }

    pub fn conflict(message: impl Into<String>) -> Self {
        Self::new(StatusCode::CONFLICT, message)
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::IllegalMove(_) => StatusCode::CONFLICT,
            Error::Capacity { .. } | Error::UnsolvedBudget { .. } => StatusCode::UNPROCESSABLE_ENTITY,
            Error::InvalidRuleset(_) | Error::Parse { .. } | Error::Arity { .. } | Error::InvalidPredicate(_) => {
                StatusCode::BAD_REQUEST
            }
            Error::Dump(_) | Error::Fixture(_) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        ApiError::new(status, e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": self.message }))).into_response()
    }
}

pub type ApiResult<T> = Result<T, ApiError>;
