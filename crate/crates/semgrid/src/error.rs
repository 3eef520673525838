//! Errors surfaced by the CLI and the HTTP service. Codes are shared.

use semgrid_core::causal::CausalError;
use semgrid_core::fdo::FdoError;
use semgrid_core::inference::InferenceError;
use semgrid_core::logic::LogicError;
use semgrid_core::nquads::ParseError;
use semgrid_core::scm::ScmError;
use semgrid_core::term::TermError;
use semgrid_core::units::{LabelError, ShapeError, UnitError};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed request: bad arguments, bad JSON, unreadable files.
    Usage,
    NotFound,
    /// The request was well formed but the domain rejected it.
    Domain,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{code}: {message}")]
pub struct ApiError {
    pub kind: ErrorKind,
    pub code: String,
    pub message: String,
}

impl ApiError {
    pub fn new(kind: ErrorKind, code: &str, message: impl Into<String>) -> Self {
        Self { kind, code: code.to_string(), message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(ErrorKind::Usage, "USAGE", message)
    }

    pub fn domain(code: &str, message: impl Into<String>) -> Self {
        Self::new(ErrorKind::Domain, code, message)
    }

    pub fn not_found(code: &str, message: impl Into<String>) -> Self {
        Self::new(ErrorKind::NotFound, code, message)
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "code": self.code, "message": self.message } })
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            ErrorKind::Usage => 2,
            _ => 1,
        }
    }

    pub fn http_status(&self) -> u16 {
        match self.kind {
            ErrorKind::Usage => 400,
            ErrorKind::NotFound => 404,
            ErrorKind::Domain => 422,
        }
    }
}

fn from_code(code: &str, message: String) -> ApiError {
    let kind = match code {
        "UNKNOWN_UNIT" => ErrorKind::NotFound,
        _ => ErrorKind::Domain,
    };
    ApiError::new(kind, code, message)
}

macro_rules! coded {
    ($($t:ty),*) => {$(
        impl From<$t> for ApiError {
            fn from(e: $t) -> Self {
                from_code(e.code(), e.to_string())
            }
        }
    )*};
}

coded!(CausalError, FdoError, InferenceError, LogicError, ScmError, UnitError);

impl From<ParseError> for ApiError {
    fn from(e: ParseError) -> Self {
        ApiError::domain("PARSE_ERROR", e.to_string())
    }
}

impl From<TermError> for ApiError {
    fn from(e: TermError) -> Self {
        ApiError::usage(e.to_string()).with_code("INVALID_IRI")
    }
}

impl From<LabelError> for ApiError {
    fn from(e: LabelError) -> Self {
        ApiError::domain("LABEL_ERROR", e.to_string())
    }
}

impl From<ShapeError> for ApiError {
    fn from(e: ShapeError) -> Self {
        ApiError::usage(e.to_string()).with_code("INVALID_SHAPE")
    }
}

impl From<serde_json::Error> for ApiError {
    fn from(e: serde_json::Error) -> Self {
        ApiError::usage(e.to_string()).with_code("INVALID_JSON")
    }
}

impl ApiError {
    pub fn with_code(mut self, code: &str) -> Self {
        self.code = code.to_string();
        self
    }
}
