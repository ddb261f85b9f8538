use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("missing `p edge <n> <m>` header")]
    MissingHeader,
    #[error("line {line}: second `p` header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: malformed line")]
    MalformedLine { line: usize },
    #[error("line {line}: invalid token `{token}`")]
    InvalidToken { line: usize, token: String },
    #[error("vertex {vertex} outside the declared range of {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("edge probability {0} outside [0, 1]")]
    InvalidProbability(f64),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("oracle refuses graphs with {n} vertices (limit {limit})")]
    OracleLimit { n: usize, limit: usize },
    #[error("palette of {k} colors exhausted while recovering vertex {vertex}")]
    PaletteExhausted { vertex: usize, k: usize },
    #[error("decoded coloring is invalid: {0}")]
    InvalidColoring(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid corpus spec: {0}")]
    CorpusSpec(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
