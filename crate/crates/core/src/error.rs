use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid character {found:?} at position {position} (expected a, b, α or β)")]
    Parse { position: usize, found: char },

    #[error("words must have equal length, got {left} and {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("{y} is not below {w} in the Bruhat order")]
    NotBelow { y: String, w: String },

    #[error("path of {y} does not lie strictly below path of {w}")]
    NotStrictlyBelow { y: String, w: String },

    #[error("labeling has {labels} values but the tree has {edges} edges")]
    DomainMismatch { labels: usize, edges: usize },

    #[error("enumeration exceeded the limit of {limit} states")]
    StateLimit { limit: u64 },

    #[error("invalid rank pair: n={n}, i={i}, j={j}")]
    InvalidRankPair { n: usize, i: usize, j: usize },

    #[error("invalid child order for node {node}")]
    InvalidChildOrder { node: usize },

    #[error("methods disagree on e({y}, {w}): recursion gives {recursion}, labeling count gives {count}")]
    MethodDisagreement {
        y: String,
        w: String,
        recursion: String,
        count: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
