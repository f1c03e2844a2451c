use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("a functional digraph needs at least one vertex")]
    EmptyDigraph,
    #[error("f[{index}] = {value} is outside [0, {n})")]
    ImageOutOfRange {
        index: usize,
        value: usize,
        n: usize,
    },
    #[error("not a permutation of Z_{n}: {reason}")]
    InvalidPermutation { n: usize, reason: String },
    #[error("size mismatch: expected {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },
    #[error("malformed input `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("expansion leaves the vertex range at i = {index} (image {image})")]
    ExpansionRange { index: usize, image: i64 },
    #[error("digraph {0} is not gracefully labeled")]
    NotGracefullyLabeled(String),
    #[error("invalid signed permutation: {0}")]
    InvalidSignedPermutation(String),
    #[error("exponent must be non-negative, got {0}")]
    NegativeExponent(String),
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("not a label-sequence exponent: {0}")]
    NotLabelSequenceExponent(String),
    #[error("label {label} is outside [0, {n})")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("matrix is not square")]
    NotSquare,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
