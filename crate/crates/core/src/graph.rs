//! Edge-weighted bipartite graphs and the matching/cover vocabulary shared
//! by every solver in this crate.
//!
//! A graph has `left_count` nodes on one side, `right_count` on the other,
//! and integer edge weights of at least 1. Node identity is positional:
//! derived graphs (weight slices, residual graphs, node removals) keep the
//! same index space as the graph they came from, so matchings and covers can
//! be compared across derivation steps without any index translation.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// Integer edge weight. Weights are always at least 1.
pub type Weight = u64;

/// Which side of the bipartition a node lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A node, addressed by side and position within that side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeId {
    pub side: Side,
    pub index: usize,
}

impl NodeId {
    /// Node `index` on the left side.
    pub fn left(index: usize) -> Self {
        NodeId { side: Side::Left, index }
    }

    /// Node `index` on the right side.
    pub fn right(index: usize) -> Self {
        NodeId { side: Side::Right, index }
    }
}

/// One weighted edge between left node `x` and right node `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub x: usize,
    pub y: usize,
    pub weight: Weight,
}

/// An immutable edge-weighted bipartite graph.
///
/// Construction validates all invariants (indices in range, weights
/// positive, no duplicate edges); afterwards the graph never changes, so
/// derived quantities like the maximum weight `N` and total weight `W` are
/// computed once and shared freely across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    left_count: usize,
    right_count: usize,
    edges: Vec<Edge>,
    adj_left: Vec<Vec<usize>>,
    adj_right: Vec<Vec<usize>>,
    max_weight: Weight,
    total_weight: Weight,
}

impl BipartiteGraph {
    /// Builds a graph from side counts and an `(x, y, weight)` edge list.
    ///
    /// Isolated nodes are fine; duplicate `(x, y)` pairs, zero weights, and
    /// out-of-range indices are not.
    ///
    /// ```
    /// use matchdecomp::BipartiteGraph;
    ///
    /// let g = BipartiteGraph::new(2, 2, vec![(0, 0, 3), (0, 1, 2), (1, 0, 2)]).unwrap();
    /// assert_eq!(g.max_weight(), 3);
    /// assert_eq!(g.total_weight(), 7);
    /// assert_eq!(g.edge_count(), 3);
    /// ```
    pub fn new(
        left_count: usize,
        right_count: usize,
        edges: impl IntoIterator<Item = (usize, usize, Weight)>,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut edge_list = Vec::new();
        let mut adj_left = vec![Vec::new(); left_count];
        let mut adj_right = vec![Vec::new(); right_count];
        let mut max_weight = 0;
        let mut total_weight = 0;
        for (x, y, weight) in edges {
            if x >= left_count {
                return Err(Error::IndexOutOfRange { side: "left", index: x, count: left_count });
            }
            if y >= right_count {
                return Err(Error::IndexOutOfRange { side: "right", index: y, count: right_count });
            }
            if weight == 0 {
                return Err(Error::ZeroWeight { x, y });
            }
            if !seen.insert((x, y)) {
                return Err(Error::DuplicateEdge { x, y });
            }
            let id = edge_list.len();
            edge_list.push(Edge { x, y, weight });
            adj_left[x].push(id);
            adj_right[y].push(id);
            max_weight = max_weight.max(weight);
            total_weight += weight;
        }
        Ok(BipartiteGraph {
            left_count,
            right_count,
            edges: edge_list,
            adj_left,
            adj_right,
            max_weight,
            total_weight,
        })
    }

    /// A graph with the given side counts and no edges.
    pub fn empty(left_count: usize, right_count: usize) -> Self {
        Self::new(left_count, right_count, []).expect("empty edge list is always valid")
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    /// Total number of nodes on both sides.
    pub fn node_count(&self) -> usize {
        self.left_count + self.right_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Largest edge weight, written `N` throughout; 0 for an edgeless graph.
    pub fn max_weight(&self) -> Weight {
        self.max_weight
    }

    /// Sum of all edge weights, written `W` throughout.
    pub fn total_weight(&self) -> Weight {
        self.total_weight
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edge ids incident to left node `x`, in insertion order.
    pub fn edges_of_left(&self, x: usize) -> &[usize] {
        &self.adj_left[x]
    }

    /// Edge ids incident to right node `y`, in insertion order.
    pub fn edges_of_right(&self, y: usize) -> &[usize] {
        &self.adj_right[y]
    }

    /// Weight of edge `(x, y)`, or `None` if the pair is not an edge.
    pub fn weight_of(&self, x: usize, y: usize) -> Option<Weight> {
        if x >= self.left_count || y >= self.right_count {
            return None;
        }
        self.adj_left[x]
            .iter()
            .map(|&id| self.edges[id])
            .find(|e| e.y == y)
            .map(|e| e.weight)
    }

    /// The heaviest `depth` weight levels as their own graph.
    ///
    /// Keeps exactly the edges with weight greater than `N - depth` and
    /// reweights them by subtracting `N - depth`, so the result has maximum
    /// weight `depth`. The node index space is unchanged. `depth` must lie
    /// in `[1, N]`.
    pub fn slice_top(&self, depth: Weight) -> Result<Self> {
        if depth == 0 || depth > self.max_weight {
            return Err(Error::DepthOutOfRange { depth, max_weight: self.max_weight });
        }
        let cut = self.max_weight - depth;
        let sliced = self
            .edges
            .iter()
            .filter(|e| e.weight > cut)
            .map(|e| (e.x, e.y, e.weight - cut));
        Self::new(self.left_count, self.right_count, sliced)
    }

    /// The part of the graph left uncovered by `cover`.
    ///
    /// Keeps exactly the edges with `weight - cover(x) - cover(y) > 0`, at
    /// that reduced weight. The node index space is unchanged. The cover
    /// need not be feasible; covered edges simply drop out.
    pub fn residual_graph(&self, cover: &Cover) -> Self {
        let residual = self.edges.iter().filter_map(|e| {
            let covered = cover.left(e.x) + cover.right(e.y);
            (e.weight > covered).then(|| (e.x, e.y, e.weight - covered))
        });
        Self::new(self.left_count, self.right_count, residual)
            .expect("residual edges are a subset of validated edges")
    }

    /// The graph with all edges incident to `node` removed.
    ///
    /// The index space is unchanged, so results for the remaining nodes line
    /// up with the original graph.
    pub fn without_node(&self, node: NodeId) -> Self {
        let keep = self.edges.iter().filter(|e| match node.side {
            Side::Left => e.x != node.index,
            Side::Right => e.y != node.index,
        });
        Self::new(self.left_count, self.right_count, keep.map(|e| (e.x, e.y, e.weight)))
            .expect("removing a node preserves validity")
    }

    /// Whether `cover` assigns every edge at least its weight across the two
    /// endpoints.
    pub fn verify_cover(&self, cover: &Cover) -> bool {
        cover.fits(self)
            && self
                .edges
                .iter()
                .all(|e| cover.left(e.x) + cover.right(e.y) >= e.weight)
    }

    /// Whether `matching` and `cover` certify each other as optimal.
    ///
    /// For a valid matching and a feasible cover, equality of their weights
    /// and the complementary slackness conditions (every positive-value node
    /// is matched, every matched edge is tight) are equivalent, and both
    /// hold exactly when the matching has maximum weight and the cover has
    /// minimum weight. Both conditions are evaluated; if they ever disagree
    /// that is a bug in this crate, reported as `InternalInconsistency`.
    ///
    /// Returns `InfeasibleInput` if `matching` is not a valid matching of
    /// this graph or `cover` is not a feasible cover of it.
    pub fn verify_duality(&self, matching: &Matching, cover: &Cover) -> Result<bool> {
        matching.check_against(self)?;
        if !cover.fits(self) {
            return Err(Error::InfeasibleInput(
                "cover side lengths do not match the graph".into(),
            ));
        }
        if !self.verify_cover(cover) {
            return Err(Error::InfeasibleInput("cover leaves an edge uncovered".into()));
        }

        let weights_equal = matching.weight() == cover.weight();

        let mut matched_left = vec![false; self.left_count];
        let mut matched_right = vec![false; self.right_count];
        let mut all_tight = true;
        for &(x, y) in matching.pairs() {
            matched_left[x] = true;
            matched_right[y] = true;
            let weight = self.weight_of(x, y).expect("validated matching edge");
            all_tight &= cover.left(x) + cover.right(y) == weight;
        }
        let positives_matched = (0..self.left_count)
            .all(|x| cover.left(x) == 0 || matched_left[x])
            && (0..self.right_count).all(|y| cover.right(y) == 0 || matched_right[y]);
        let slack_conditions = all_tight && positives_matched;

        if weights_equal != slack_conditions {
            return Err(Error::InternalInconsistency(format!(
                "weight equality ({weights_equal}) and complementary slackness \
                 ({slack_conditions}) disagree"
            )));
        }
        Ok(weights_equal)
    }
}

/// A set of node-disjoint edges together with its total weight.
///
/// Values are validated against a graph at construction time and immutable
/// afterwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
    weight: Weight,
}

impl Matching {
    /// Validates `pairs` as a matching of `graph` and records its weight.
    pub fn new(graph: &BipartiteGraph, pairs: Vec<(usize, usize)>) -> Result<Self> {
        let weight = Self::validate(graph, &pairs)?;
        Ok(Matching { pairs, weight })
    }

    /// The empty matching.
    pub fn empty() -> Self {
        Matching { pairs: Vec::new(), weight: 0 }
    }

    fn validate(graph: &BipartiteGraph, pairs: &[(usize, usize)]) -> Result<Weight> {
        let mut used_left = HashSet::new();
        let mut used_right = HashSet::new();
        let mut weight = 0;
        for &(x, y) in pairs {
            if !used_left.insert(x) {
                return Err(Error::NotAMatching {
                    reason: format!("left node {x} appears in more than one pair"),
                });
            }
            if !used_right.insert(y) {
                return Err(Error::NotAMatching {
                    reason: format!("right node {y} appears in more than one pair"),
                });
            }
            match graph.weight_of(x, y) {
                Some(w) => weight += w,
                None => {
                    return Err(Error::NotAMatching {
                        reason: format!("({x}, {y}) is not an edge of the graph"),
                    })
                }
            }
        }
        Ok(weight)
    }

    /// Re-validates this matching against `graph` (pairs built for one graph
    /// may be checked against another with the same index space).
    pub fn check_against(&self, graph: &BipartiteGraph) -> Result<()> {
        let weight = Self::validate(graph, &self.pairs)?;
        if weight != self.weight {
            return Err(Error::InfeasibleInput(format!(
                "matching weight {} does not match the graph's edge weights ({weight})",
                self.weight
            )));
        }
        Ok(())
    }

    /// Matched `(x, y)` pairs in construction order.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Total weight under the graph the matching was built against.
    pub fn weight(&self) -> Weight {
        self.weight
    }

    /// Number of matched pairs.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// A nonnegative value per node, interpreted as a weighted vertex cover.
///
/// The cover is feasible for a graph when every edge receives at least its
/// weight across its two endpoints; see [`BipartiteGraph::verify_cover`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    left: Vec<Weight>,
    right: Vec<Weight>,
}

impl Cover {
    /// The all-zero cover for the given side counts.
    pub fn zero(left_count: usize, right_count: usize) -> Self {
        Cover { left: vec![0; left_count], right: vec![0; right_count] }
    }

    /// A cover from explicit per-side value vectors.
    pub fn from_values(left: Vec<Weight>, right: Vec<Weight>) -> Self {
        Cover { left, right }
    }

    /// Value on left node `x`.
    pub fn left(&self, x: usize) -> Weight {
        self.left[x]
    }

    /// Value on right node `y`.
    pub fn right(&self, y: usize) -> Weight {
        self.right[y]
    }

    /// Value on `node`.
    pub fn get(&self, node: NodeId) -> Weight {
        match node.side {
            Side::Left => self.left[node.index],
            Side::Right => self.right[node.index],
        }
    }

    pub fn left_values(&self) -> &[Weight] {
        &self.left
    }

    pub fn right_values(&self) -> &[Weight] {
        &self.right
    }

    /// Sum of all values.
    pub fn weight(&self) -> Weight {
        self.left.iter().sum::<Weight>() + self.right.iter().sum::<Weight>()
    }

    /// Adds `other` value by value. Covers of a weight slice and of the
    /// matching residual graph compose this way into a cover of the original
    /// graph, because all three share one index space.
    pub fn add(&mut self, other: &Cover) {
        assert_eq!(self.left.len(), other.left.len(), "cover side lengths differ");
        assert_eq!(self.right.len(), other.right.len(), "cover side lengths differ");
        for (a, b) in self.left.iter_mut().zip(&other.left) {
            *a += b;
        }
        for (a, b) in self.right.iter_mut().zip(&other.right) {
            *a += b;
        }
    }

    fn fits(&self, graph: &BipartiteGraph) -> bool {
        self.left.len() == graph.left_count() && self.right.len() == graph.right_count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two left nodes, two right nodes, edges (x1,y1,3), (x1,y2,2), (x2,y1,2).
    fn sample_graph() -> BipartiteGraph {
        BipartiteGraph::new(2, 2, vec![(0, 0, 3), (0, 1, 2), (1, 0, 2)]).unwrap()
    }

    #[test]
    fn builds_sample_graph() {
        let g = sample_graph();
        assert_eq!(g.node_count(), 4);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.max_weight(), 3);
        assert_eq!(g.total_weight(), 7);
        assert_eq!(g.weight_of(0, 0), Some(3));
        assert_eq!(g.weight_of(1, 1), None);
    }

    #[test]
    fn builds_single_edge() {
        let g = BipartiteGraph::new(1, 1, vec![(0, 0, 5)]).unwrap();
        assert_eq!(g.max_weight(), 5);
        assert_eq!(g.total_weight(), 5);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn accepts_isolated_nodes() {
        let g = BipartiteGraph::new(4, 3, vec![(0, 0, 2)]).unwrap();
        assert_eq!(g.node_count(), 7);
        assert_eq!(g.edges_of_left(3), &[] as &[usize]);
    }

    #[test]
    fn rejects_duplicate_edge() {
        let err = BipartiteGraph::new(2, 2, vec![(0, 0, 3), (0, 0, 1)]).unwrap_err();
        assert_eq!(err, Error::DuplicateEdge { x: 0, y: 0 });
    }

    #[test]
    fn rejects_zero_weight() {
        let err = BipartiteGraph::new(2, 2, vec![(0, 1, 0)]).unwrap_err();
        assert_eq!(err, Error::ZeroWeight { x: 0, y: 1 });
    }

    #[test]
    fn rejects_out_of_range_index() {
        let err = BipartiteGraph::new(2, 2, vec![(2, 0, 1)]).unwrap_err();
        assert_eq!(err, Error::IndexOutOfRange { side: "left", index: 2, count: 2 });
        let err = BipartiteGraph::new(2, 2, vec![(0, 5, 1)]).unwrap_err();
        assert_eq!(err, Error::IndexOutOfRange { side: "right", index: 5, count: 2 });
    }

    #[test]
    fn slice_top_keeps_heaviest_levels() {
        let g = sample_graph();

        let top = g.slice_top(1).unwrap();
        assert_eq!(top.edges(), &[Edge { x: 0, y: 0, weight: 1 }]);

        let two = g.slice_top(2).unwrap();
        assert_eq!(
            two.edges(),
            &[
                Edge { x: 0, y: 0, weight: 2 },
                Edge { x: 0, y: 1, weight: 1 },
                Edge { x: 1, y: 0, weight: 1 },
            ]
        );

        let full = g.slice_top(3).unwrap();
        assert_eq!(full, g);
    }

    #[test]
    fn slice_top_rejects_bad_depth() {
        let g = sample_graph();
        assert_eq!(g.slice_top(0).unwrap_err(), Error::DepthOutOfRange { depth: 0, max_weight: 3 });
        assert_eq!(g.slice_top(4).unwrap_err(), Error::DepthOutOfRange { depth: 4, max_weight: 3 });
        let empty = BipartiteGraph::empty(1, 1);
        assert_eq!(
            empty.slice_top(1).unwrap_err(),
            Error::DepthOutOfRange { depth: 1, max_weight: 0 }
        );
    }

    #[test]
    fn residual_graph_subtracts_cover() {
        let g = sample_graph();

        let cover = Cover::from_values(vec![0, 0], vec![1, 0]);
        let residual = g.residual_graph(&cover);
        assert_eq!(
            residual.edges(),
            &[
                Edge { x: 0, y: 0, weight: 2 },
                Edge { x: 0, y: 1, weight: 2 },
                Edge { x: 1, y: 0, weight: 1 },
            ]
        );
        assert_eq!(residual.total_weight(), 5);

        assert_eq!(g.residual_graph(&Cover::zero(2, 2)), g);

        let big = Cover::from_values(vec![3, 0], vec![2, 0]);
        assert_eq!(g.residual_graph(&big).edge_count(), 0);
    }

    #[test]
    fn without_node_drops_incident_edges() {
        let g = sample_graph();
        let no_y1 = g.without_node(NodeId::right(0));
        assert_eq!(no_y1.edges(), &[Edge { x: 0, y: 1, weight: 2 }]);
        assert_eq!(no_y1.left_count(), 2);
        assert_eq!(no_y1.right_count(), 2);
    }

    #[test]
    fn verify_cover_checks_every_edge() {
        let g = sample_graph();
        assert!(g.verify_cover(&Cover::from_values(vec![2, 0], vec![2, 0])));
        assert!(g.verify_cover(&Cover::from_values(vec![3, 2], vec![0, 0])));
        assert!(!g.verify_cover(&Cover::zero(2, 2)));
        assert!(!g.verify_cover(&Cover::from_values(vec![2, 0], vec![0, 0])));
    }

    #[test]
    fn verify_duality_accepts_optimal_pair() {
        let g = sample_graph();
        let m = Matching::new(&g, vec![(0, 1), (1, 0)]).unwrap();
        let c = Cover::from_values(vec![2, 0], vec![2, 0]);
        assert_eq!(g.verify_duality(&m, &c), Ok(true));
    }

    #[test]
    fn verify_duality_rejects_suboptimal_matching() {
        let g = sample_graph();
        let m = Matching::new(&g, vec![(0, 0)]).unwrap();
        let c = Cover::from_values(vec![2, 0], vec![2, 0]);
        assert_eq!(g.verify_duality(&m, &c), Ok(false));
    }

    #[test]
    fn verify_duality_on_empty_graph() {
        let g = BipartiteGraph::empty(2, 3);
        assert_eq!(g.verify_duality(&Matching::empty(), &Cover::zero(2, 3)), Ok(true));
    }

    #[test]
    fn verify_duality_rejects_infeasible_cover() {
        let g = sample_graph();
        let m = Matching::new(&g, vec![(0, 1), (1, 0)]).unwrap();
        assert!(matches!(
            g.verify_duality(&m, &Cover::zero(2, 2)),
            Err(Error::InfeasibleInput(_))
        ));
        assert!(matches!(
            g.verify_duality(&m, &Cover::zero(1, 1)),
            Err(Error::InfeasibleInput(_))
        ));
    }

    #[test]
    fn matching_validation_rejects_bad_pairs() {
        let g = sample_graph();
        assert!(matches!(
            Matching::new(&g, vec![(0, 0), (0, 1)]),
            Err(Error::NotAMatching { .. })
        ));
        assert!(matches!(
            Matching::new(&g, vec![(1, 1)]),
            Err(Error::NotAMatching { .. })
        ));
        let m = Matching::new(&g, vec![(0, 1), (1, 0)]).unwrap();
        assert_eq!(m.weight(), 4);
        assert_eq!(m.len(), 2);
    }

    #[test]
    fn cover_add_composes_values() {
        let mut a = Cover::from_values(vec![1, 0], vec![0, 2]);
        let b = Cover::from_values(vec![0, 3], vec![1, 0]);
        a.add(&b);
        assert_eq!(a, Cover::from_values(vec![1, 3], vec![1, 2]));
        assert_eq!(a.weight(), 7);
    }
}
