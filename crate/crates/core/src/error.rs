use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("graph is disconnected: vertex {unreached} is unreachable")]
    Disconnected { unreached: usize },

    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),

    #[error("invalid colouring: {0}")]
    InvalidColouring(String),

    #[error("{0} exceeds the configured search bound")]
    SizeBound(String),

    #[error("time budget exhausted")]
    BudgetExhausted,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("no distinguishing colouring of this kind exists: {0}")]
    NoDistinguishingColouring(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Whether the error stems from malformed input (unreadable or
    /// ill-formed files, colourings that do not match their graph) rather
    /// than a failed property or an unmet precondition.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::Io(_)
                | Error::Json(_)
                | Error::InvalidGraph(_)
                | Error::InvalidVertex { .. }
                | Error::InvalidTruncation(_)
                | Error::InvalidColouring(_)
        )
    }
}
