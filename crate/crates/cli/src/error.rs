use serde::Serialize;
use thiserror::Error;

use semitotal::{Error as CoreError, Violation};

#[derive(Debug, Error)]
pub enum AppError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Malformed(String),
    #[error("{0}")]
    NotFound(String),
    #[error("unknown session `{0}`")]
    UnknownSession(String),
    #[error("{0}")]
    Conflict(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

pub type AppResult<T> = Result<T, AppError>;

/// Body sent with every failed request.
#[derive(Debug, Serialize)]
pub struct ErrorBody {
    pub error: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<Violation>,
}

impl AppError {
    pub fn body(&self) -> ErrorBody {
        let violations = match self {
            AppError::Core(CoreError::NotSemiTotal(v)) => v.clone(),
            _ => Vec::new(),
        };
        ErrorBody {
            error: self.to_string(),
            violations,
        }
    }

    /// Moves that do not fit the current coloring.
    pub fn is_move_conflict(&self) -> bool {
        matches!(
            self,
            AppError::Conflict(_)
                | AppError::Core(
                    CoreError::StartColor { .. }
                        | CoreError::PathMismatch(_)
                        | CoreError::NotBetaEdge(_)
                        | CoreError::PostValidation(_)
                        | CoreError::NotAdjacent(..)
                        | CoreError::EqualColors(_)
                        | CoreError::VertexOutOfRange { .. }
                        | CoreError::EdgeOutOfRange { .. }
                )
        )
    }

    /// HTTP status for this error outside move endpoints.
    pub fn status(&self) -> u16 {
        match self {
            AppError::Usage(_) | AppError::Malformed(_) => 400,
            AppError::NotFound(_) | AppError::UnknownSession(_) => 404,
            AppError::Conflict(_) => 409,
            AppError::Core(e) => match e {
                CoreError::UnknownCatalogKey(_)
                | CoreError::InvalidPattern(_)
                | CoreError::InvalidParameter(_)
                | CoreError::Json(_)
                | CoreError::CapConsent { .. } => 400,
                CoreError::Io(_) | CoreError::CatalogData(_) => 500,
                _ if self.is_move_conflict() => 409,
                _ => 422,
            },
        }
    }
}
