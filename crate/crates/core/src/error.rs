use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),

    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("not a path in the graph: {0}")]
    NotAPath(String),

    #[error("no geodesic from `{from}` to `{to}`")]
    NoGeodesic { from: String, to: String },

    #[error("path is not geodesic: {0}")]
    NotGeodesic(String),

    #[error("paths are not parallel: {0}")]
    NotParallel(String),

    #[error("graph not strongly {delta}-hyperbolic at this triangle: {detail}")]
    NotHyperbolic { delta: u32, detail: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("rewriting system is not checked confluent: {0}")]
    NotConfluent(String),

    #[error("word problem undecided at cap: `{0}` vs `{1}`")]
    OracleUnknown(String, String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
