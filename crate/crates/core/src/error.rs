use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("missing `vertices <n>` header")]
    MissingHeader,

    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),

    #[error("graph family `{family}` needs a size of at least {min}, got {got}")]
    SizeTooSmall { family: String, min: usize, got: usize },

    #[error("{what} is limited to {cap} vertices, got {got}")]
    CapExceeded { what: &'static str, cap: usize, got: usize },

    #[error("map has {found} entries but the graph has {expected} vertices")]
    MapLength { expected: usize, found: usize },

    #[error("map entry T({vertex}) = {image} is not a vertex")]
    MapOutOfRange { vertex: usize, image: usize },

    #[error("map collapses edge ({u},{v}) onto vertex {image}")]
    EdgeCollapsed { u: usize, v: usize, image: usize },

    #[error("map sends edge ({u},{v}) to non-edge ({tu},{tv})")]
    EdgeBroken { u: usize, v: usize, tu: usize, tv: usize },

    #[error("operation requires an automorphism")]
    NotAutomorphism,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },

    #[error("invalid probability `{0}`")]
    InvalidProbability(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
