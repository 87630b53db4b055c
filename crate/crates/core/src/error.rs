use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("vertex {vertex} is out of range for a graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("negative weight {weight} on pair ({i}, {j})")]
    NegativeWeight { i: usize, j: usize, weight: String },

    #[error("length mismatch: word has {word} symbols, build order has {order}")]
    LengthMismatch { word: usize, order: usize },

    #[error("not a permutation of 1..={0}")]
    NotAPermutation(usize),

    #[error("word length {length} exceeds the permutation bound {bound}")]
    PermutationBound { length: usize, bound: usize },

    #[error("enumeration bound exceeded: {count} words exceeds the limit {limit}")]
    EnumerationBound { count: u128, limit: u128 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("insertion dead end at length {length}: every (location, vertex) pair has weight zero")]
    DeadEnd { length: usize },

    #[error("overlap mismatch between tuples {position} and {}", position + 1)]
    OverlapMismatch { position: usize },

    #[error("malformed rational {0:?}")]
    Rational(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
