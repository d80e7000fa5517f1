use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("invalid web: {0}")]
    InvalidWeb(String),
    #[error("web has no loop, digon or square face")]
    NoReduction,
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("movie frames do not match at composition boundary")]
    FrameMismatch,
    #[error("movie is not closed (boundary webs must be empty)")]
    NotClosed,
    #[error("malformed foam: {0}")]
    MalformedFoam(String),
    #[error("non-integral solution while computing an induced map: {0}")]
    NonIntegral(String),
    #[error("Gram matrix is not unimodular (determinant {0})")]
    NotUnimodular(String),
    #[error("d∘d ≠ 0 at homological degree {i}, q-degree {j}")]
    DSquaredNonzero { i: i64, j: i64 },
    #[error("cube square does not anticommute: {0}")]
    NotAnticommutative(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Internal consistency failures, as opposed to bad user input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NonIntegral(_)
                | Error::NotUnimodular(_)
                | Error::DSquaredNonzero { .. }
                | Error::NotAnticommutative(_)
                | Error::MalformedFoam(_)
                | Error::NoReduction
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
