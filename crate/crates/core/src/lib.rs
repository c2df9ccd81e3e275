//! Maximum weight bipartite matching by repeated unit-weight peeling.
//!
//! The solver never touches a weighted matching algorithm. Instead it
//! peels one slice off the top of the weight range at a time: the heaviest
//! edges form an unweighted graph whose maximum cardinality matching and
//! minimum vertex cover are computed directly, the cover is subtracted
//! from the incident weights, and the process repeats on what is left.
//! Summing the per-slice covers yields a minimum weight cover of the whole
//! graph, and its total equals the maximum matching weight. At most
//! `max_weight` rounds are needed, and each edge is touched once per unit
//! of its weight.
//!
//! On top of the solver the crate provides:
//!
//! - recovery of an explicit optimum matching from any minimum cover, by
//!   a perfect-matching construction on a doubled copy of the tight edges
//!   ([`recover_matching`], [`solve`]);
//! - all-cavity matching weights, i.e. the optimum of every single-node
//!   deletion at once, via an unfolded unit-weight expansion
//!   ([`all_cavity`]);
//! - independent reference solvers used to cross-check everything
//!   ([`oracle`]).
//!
//! ```
//! use matchdecomp::{BipartiteGraph, solve};
//!
//! let g = BipartiteGraph::new(2, 2, vec![(0, 0, 3), (0, 1, 2), (1, 0, 2)])?;
//! let solution = solve(&g)?;
//! assert_eq!(solution.weight, 4);
//! assert_eq!(solution.cover.weight(), 4);
//! # Ok::<(), matchdecomp::Error>(())
//! ```

mod cardinality;
mod cavity;
mod error;
mod graph;
pub mod oracle;
mod recovery;
mod solver;

pub use cardinality::{konig_cover, konig_cover_seeded, max_cardinality_matching, KonigSeed};
pub use cavity::{
    all_cavity, all_cavity_validated, locked_copies, unfold, unfold_matching, CavityTable,
    LockedCopies, UnfoldedGraph, UnfoldedMatching,
};
pub use error::{Error, Result};
pub use graph::{BipartiteGraph, Cover, Edge, Matching, NodeId, Side, Weight};
pub use recovery::{recover_matching, solve, DoubledGraph, Solution};
pub use solver::{
    compute_min_cover, compute_min_cover_seeded, compute_mwm, decompose_check,
    decompose_check_seeded, peel, PeelOutcome,
};
