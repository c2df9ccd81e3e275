//! Maximum weight matching by peeling one unit of weight at a time.
//!
//! The weight of a maximum matching splits as `mwm(G) = mm(G1) + mwm(G')`,
//! where `G1` is the unit-weight graph formed by the heaviest weight level
//! (every edge of maximum weight, taken at weight 1), `mm` is its maximum
//! cardinality matching size, and `G'` is the residual graph left after
//! subtracting a minimum vertex cover of `G1` from the edge weights. The
//! solver applies this identity iteratively: edges sit in integer buckets
//! indexed by their current residual weight, the top bucket is matched and
//! covered, covered nodes push their incident edges down a bucket, and the
//! per-level cover values accumulate into a minimum weight cover of the
//! whole graph.
//!
//! Each level empties the current top bucket and no edge ever moves up, so
//! the loop runs at most `N` levels for maximum weight `N`, and the total
//! work in bucket updates is bounded by the total weight `W`.

use crate::cardinality::{cover_nodes, max_matching, KonigSeed, UnitGraph};
use crate::error::Result;
use crate::graph::{BipartiteGraph, Cover, Weight};

/// Everything the peel loop produces in one pass.
#[derive(Debug, Clone)]
pub struct PeelOutcome {
    /// Maximum matching weight of the input graph.
    pub mwm: Weight,
    /// Minimum weight cover of the input graph (same weight as `mwm`).
    pub cover: Cover,
    /// Number of peel levels executed (at most `N`).
    pub levels: usize,
    /// Total remaining edge weight after each level; strictly decreasing.
    pub residual_trace: Vec<Weight>,
}

struct Peeler<'g> {
    graph: &'g BipartiteGraph,
    seed: KonigSeed,
    /// Current residual weight per edge; 0 means fully covered.
    residual: Vec<Weight>,
    /// `buckets[r]` holds the ids of edges with residual weight `r`.
    buckets: Vec<Vec<usize>>,
    /// Position of each live edge inside its bucket, for O(1) removal.
    position: Vec<usize>,
    /// Highest possibly-nonempty bucket; only ever moves down.
    top: usize,
    cover_left: Vec<Weight>,
    cover_right: Vec<Weight>,
    matched_total: Weight,
    live_weight: Weight,
    levels: usize,
    residual_trace: Vec<Weight>,
}

impl<'g> Peeler<'g> {
    fn new(graph: &'g BipartiteGraph, seed: KonigSeed) -> Self {
        let max_weight = graph.max_weight() as usize;
        let mut buckets = vec![Vec::new(); max_weight + 1];
        let mut position = vec![0; graph.edge_count()];
        let mut residual = Vec::with_capacity(graph.edge_count());
        for (id, e) in graph.edges().iter().enumerate() {
            let bucket = &mut buckets[e.weight as usize];
            position[id] = bucket.len();
            bucket.push(id);
            residual.push(e.weight);
        }
        Peeler {
            graph,
            seed,
            residual,
            buckets,
            position,
            top: max_weight,
            cover_left: vec![0; graph.left_count()],
            cover_right: vec![0; graph.right_count()],
            matched_total: 0,
            live_weight: graph.total_weight(),
            levels: 0,
            residual_trace: Vec::new(),
        }
    }

    /// Moves edge `id` down one bucket, retiring it at residual 0.
    fn decrement(&mut self, id: usize) {
        let r = self.residual[id] as usize;
        let pos = self.position[id];
        let bucket = &mut self.buckets[r];
        bucket.swap_remove(pos);
        if let Some(&moved) = bucket.get(pos) {
            self.position[moved] = pos;
        }
        let r = r - 1;
        self.residual[id] = r as Weight;
        self.live_weight -= 1;
        if r > 0 {
            self.position[id] = self.buckets[r].len();
            self.buckets[r].push(id);
        }
    }

    fn run(mut self) -> PeelOutcome {
        while self.top > 0 {
            if self.buckets[self.top].is_empty() {
                self.top -= 1;
                continue;
            }
            self.peel_level();
        }
        debug_assert_eq!(self.live_weight, 0);
        PeelOutcome {
            mwm: self.matched_total,
            cover: Cover::from_values(self.cover_left, self.cover_right),
            levels: self.levels,
            residual_trace: self.residual_trace,
        }
    }

    /// Matches and covers the top weight level, then pushes covered weight
    /// out of every incident edge.
    fn peel_level(&mut self) {
        let level_edges = self.buckets[self.top].clone();
        let mut unit = UnitGraph::new(self.graph.left_count(), self.graph.right_count());
        for &id in &level_edges {
            let e = self.graph.edges()[id];
            unit.add_edge(e.x, e.y);
        }
        let matching = max_matching(&unit);
        let (cover_left, cover_right) = cover_nodes(&unit, &matching, self.seed);
        assert_eq!(
            cover_left.len() + cover_right.len(),
            matching.size,
            "level cover weight must equal the level matching size"
        );
        self.matched_total += matching.size as Weight;

        for &x in &cover_left {
            self.cover_left[x] += 1;
            for &id in self.graph.edges_of_left(x) {
                if self.residual[id] > 0 {
                    self.decrement(id);
                }
            }
        }
        for &y in &cover_right {
            self.cover_right[y] += 1;
            for &id in self.graph.edges_of_right(y) {
                if self.residual[id] > 0 {
                    self.decrement(id);
                }
            }
        }

        self.levels += 1;
        self.residual_trace.push(self.live_weight);
        debug_assert!(self.levels as Weight <= self.graph.max_weight());
    }
}

/// Runs the full peel loop with the given cover seed side.
pub fn peel(graph: &BipartiteGraph, seed: KonigSeed) -> PeelOutcome {
    Peeler::new(graph, seed).run()
}

/// Weight of a maximum weight matching.
pub fn compute_mwm(graph: &BipartiteGraph) -> Weight {
    peel(graph, KonigSeed::default()).mwm
}

/// A minimum weight cover, accumulated across peel levels.
///
/// Its weight always equals [`compute_mwm`] on the same graph.
pub fn compute_min_cover(graph: &BipartiteGraph) -> Cover {
    compute_min_cover_seeded(graph, KonigSeed::default())
}

/// [`compute_min_cover`] with an explicit cover seed side.
pub fn compute_min_cover_seeded(graph: &BipartiteGraph, seed: KonigSeed) -> Cover {
    peel(graph, seed).cover
}

/// Splits the matching weight across a top slice and its residual.
///
/// Solves the slice of the heaviest `depth` weight levels, subtracts the
/// slice's minimum cover from the whole graph, solves what remains, and
/// returns both weights. Their sum equals [`compute_mwm`] of the original
/// graph. `depth` must lie in `[1, N]`.
pub fn decompose_check(graph: &BipartiteGraph, depth: Weight) -> Result<(Weight, Weight)> {
    decompose_check_seeded(graph, depth, KonigSeed::default())
}

/// [`decompose_check`] with an explicit cover seed side.
pub fn decompose_check_seeded(
    graph: &BipartiteGraph,
    depth: Weight,
    seed: KonigSeed,
) -> Result<(Weight, Weight)> {
    let slice = graph.slice_top(depth)?;
    let sliced = peel(&slice, seed);
    let residual = graph.residual_graph(&sliced.cover);
    let rest = peel(&residual, seed);
    Ok((sliced.mwm, rest.mwm))
}
