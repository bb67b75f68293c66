use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed instance, factor or graph text.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// The object does not fit the graph it is used with (non-edge, duplicate edge, wrong side).
    #[error("structural error: {0}")]
    Structural(String),

    /// An operation was called outside its domain.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The brute-force oracle gave up; this is "unknown", never "no".
    #[error("oracle budget exhausted after {nodes} search nodes")]
    Budget { nodes: u64 },

    #[error("model error: {0}")]
    Model(String),

    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
