//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("node index {index} out of range for {n} nodes")]
    NodeOutOfRange { index: usize, n: usize },

    #[error("self-loop ({0},{0}) is not allowed")]
    SelfLoop(usize),

    #[error("edge pair must satisfy i < j, got ({i},{j})")]
    UnorderedPair { i: usize, j: usize },

    #[error("permutation has length {got}, expected {expected}")]
    PermutationLength { got: usize, expected: usize },

    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),

    #[error("invalid bit character {0:?}, expected '0' or '1'")]
    InvalidBitChar(char),

    #[error("malformed description: {0}")]
    MalformedDescription(String),

    #[error("malformed edge list: {0}")]
    MalformedEdgeList(String),

    #[error("wordsize {w} out of range [{min},{max}] for {n} nodes")]
    WordsizeOutOfRange { w: u32, min: u32, max: u32, n: usize },

    #[error("malformed compressed stream: {0}")]
    MalformedCompressed(String),

    #[error("{what} on {n} nodes exceeds the feasibility bound {bound}; raise the bound to override")]
    InfeasibleSize { what: &'static str, n: usize, bound: usize },

    #[error("{what} over {count} link fields exceeds the feasibility bound {bound}; raise the bound to override")]
    InfeasibleCount { what: &'static str, count: u128, bound: u128 },

    #[error("offdiagonal complexity of an edgeless graph is 0 by convention; no distribution to normalize")]
    EdgelessGraph,

    #[error("correlation requires at least two rows with nonzero variance in x")]
    DegenerateVariance,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
