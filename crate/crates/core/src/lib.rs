//! Information-content complexity measures for undirected graphs.
//!
//! A labeled graph is written down as a prefix-free bitstring (a unary node
//! count followed by a triangular link field), and the complexity of the
//! underlying topology is the description length minus the log of the number
//! of distinct descriptions, `C = N(N+1)/2 + 1 - log2(omega)` with
//! `omega = N!/|Aut|`. On top of that sit a run-length compressed variant
//! (`zcomplexity`) and the offdiagonal complexity of the degree-degree link
//! distribution, plus exhaustive enumeration of isomorphism classes and the
//! random-graph experiments relating the measures.

pub mod bits;
pub mod canon;
pub mod codec;
pub mod ensemble;
pub mod error;
pub mod graph;
pub mod measures;
pub mod perm;
pub mod rle;

mod canon_fast;
mod rle_fast;

pub use bits::BitString;
pub use canon::{automorphism_order, canonical_form, canonical_graph, omega, CanonicalForm};
pub use codec::{all_descriptions, decode, encode, Description};
pub use ensemble::{
    ba_random, correlate, enumerate_graphs, er_random, sparse_sweep_experiment, ClassRecord,
    Correlation, EnumerationResult, ExperimentRow, RowSource, SweepConfig,
};
pub use error::Error;
pub use graph::{edge_index, Graph};
pub use measures::{
    complexity, compression_error, derived_entropy, method_selector, offdiagonal_complexity,
    s_max, zcomplexity, zcomplexity_class_sweep, ComplexityReport, DegreeCorrelationMatrix,
    Method,
};
pub use rle::{
    compress, decompress, empty_full_closed_form, wordsize_range, zeta, zeta_capped,
    CompressedDescription, GrammarVariant,
};

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
