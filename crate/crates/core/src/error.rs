use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("empty graph")]
    EmptyGraph,

    #[error("unknown node `{0}`")]
    UnknownNode(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("eigenvector undefined: graph has no edges")]
    EigenvectorUndefined,

    #[error("spearman correlation undefined: {0}")]
    UndefinedCorrelation(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
