use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("invalid atom structure: {0}")]
    InvalidAtomStructure(String),

    #[error("atom structure fails the nonassociative-algebra axioms ({0} violations)")]
    NotAnAtomStructure(usize),

    #[error("invalid colouring: {0}")]
    InvalidColouring(String),

    #[error("colour count mismatch: colouring has {colouring} colours, signature has {signature}")]
    ColourCountMismatch { colouring: usize, signature: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid quasigroup: {0}")]
    InvalidQuasigroup(String),

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("malformed document: {0}")]
    Format(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
