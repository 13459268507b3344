use thiserror::Error;

/// Errors produced by code construction, decoding and simulation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid Reed-Muller parameters RM({r},{m}): need 0 <= r <= m and 1 <= m <= {max_m}")]
    InvalidCode { r: usize, m: usize, max_m: usize },

    #[error("message bit {index} is frozen but set to 1")]
    FrozenBitSet { index: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("refusing to enumerate 2^{k} codewords (limit is 2^{limit})")]
    TooManyCodewords { k: usize, limit: usize },

    #[error("unsupported node RM({r},{s}): decoders need 1 <= r <= s-1")]
    UnsupportedNode { r: usize, s: usize },

    #[error("permutation matrix is singular over GF(2)")]
    SingularMatrix,

    #[error("cannot parse permutation: {0}")]
    ParsePerm(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
