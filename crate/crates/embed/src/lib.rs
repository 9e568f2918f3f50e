//! TransE embeddings for knowledge graphs.
//!
//! Each entity and relation gets a vector; a triple `(s, p, o)` is scored
//! by how closely `e_s + r_p` lands on `e_o`. Training minimizes a margin
//! ranking loss against corrupted triples with plain SGD. Link prediction
//! ranks candidate completions by score, and evaluation uses the filtered
//! ranking protocol.

mod eval;
mod model;
mod persist;
mod train;

use thiserror::Error;

pub use eval::{evaluate, predict_links, EvalReport, LinkQuery, Metrics, TripleRanks};
pub use model::{EmbeddingModel, Gradient, Ids, Norm};
pub use persist::{read_model, write_model};
pub use train::{init_rng, train, Corruption, NegativeSampler, TrainConfig, Trainer};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("cannot embed an empty graph")]
    EmptyGraph,
    #[error("unknown entity {0}")]
    UnknownEntity(String),
    #[error("unknown relation {0}")]
    UnknownRelation(String),
    #[error("unknown terms in test triples: {}", .0.join(", "))]
    UnknownTerms(Vec<String>),
    #[error("negative sampling is unsatisfiable: filtering needs at least two entities")]
    UnsatisfiableSampling,
    #[error("k must be positive")]
    InvalidK,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("vector for {term} has {found} components, expected {expected}")]
    DimensionMismatch { term: String, expected: usize, found: usize },
    #[error("model file line {line}: {message}")]
    Format { line: usize, message: String },
}
