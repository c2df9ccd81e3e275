use thiserror::Error;

use crate::graph::Weight;

/// Errors reported by graph construction, solvers, and oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The same (x, y) pair appeared more than once in an edge list.
    #[error("duplicate edge ({x}, {y})")]
    DuplicateEdge { x: usize, y: usize },

    /// An edge carried weight 0; weights must be at least 1.
    #[error("edge ({x}, {y}) has weight 0; weights must be positive")]
    ZeroWeight { x: usize, y: usize },

    /// A node index fell outside the declared side counts.
    #[error("{side} index {index} out of range ({count} nodes on that side)")]
    IndexOutOfRange {
        side: &'static str,
        index: usize,
        count: usize,
    },

    /// A slice depth fell outside [1, N] for maximum weight N.
    #[error("slice depth {depth} out of range [1, {max_weight}]")]
    DepthOutOfRange { depth: Weight, max_weight: Weight },

    /// A cardinality routine was handed a graph with non-unit weights.
    #[error("expected unit weights, found weight {weight} on edge ({x}, {y})")]
    NonUnitWeights { x: usize, y: usize, weight: Weight },

    /// A vertex-cover construction detected that the supplied matching is
    /// not maximum (cover weight disagrees with the matching size).
    #[error("matching is not maximum: cover weight {cover_weight} != matching size {matching_size}")]
    MatchingNotMaximum {
        cover_weight: Weight,
        matching_size: usize,
    },

    /// Matching recovery detected that the supplied cover is not a minimum
    /// weight cover of the graph.
    #[error("cover is not a minimum weight cover: {reason}")]
    CoverNotOptimal { reason: String },

    /// A pair list is not a matching of the graph it was used with.
    #[error("not a matching: {reason}")]
    NotAMatching { reason: String },

    /// A matching supplied as optimal does not have maximum weight.
    #[error("matching weight {got} is not optimal (maximum weight is {want})")]
    MatchingNotOptimal { got: Weight, want: Weight },

    /// The instance exceeds the size limit of an exhaustive oracle.
    #[error("instance too large for exhaustive search: {edges} edges (limit {limit})")]
    TooLarge { edges: usize, limit: usize },

    /// A supplied matching or cover does not fit the graph it was checked
    /// against.
    #[error("infeasible input: {0}")]
    InfeasibleInput(String),

    /// Two internally cross-checked conditions disagreed; this indicates a
    /// bug, not bad input.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
