//! Recovering an explicit maximum weight matching from a minimum weight
//! cover.
//!
//! Given a minimum cover `D`, every maximum weight matching uses only tight
//! edges (weight equal to the two cover values) and saturates every node
//! with a positive cover value. Those two constraints reduce recovery to a
//! cardinality problem on a doubled graph: take two copies of the tight
//! subgraph and join the copies of each zero-cover node by a bridge edge.
//! A maximum cardinality matching there must be perfect, and its first-copy
//! edges form a maximum weight matching of the original graph. If the
//! matching comes back imperfect or with the wrong weight, the supplied
//! cover was not a minimum cover.

use crate::cardinality::max_cardinality_matching;
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Cover, Matching, NodeId, Weight};
use crate::solver::compute_min_cover;

/// Two copies of the tight subgraph, bridged at zero-cover nodes.
///
/// The doubled graph is itself bipartite: first-copy left nodes sit with
/// second-copy right nodes, so first-copy edges, second-copy edges, and
/// bridges all cross its two sides. Left side order is `x^a` for every
/// original left node then `y^b` for every original right node; right side
/// order is `y^a` then `x^b`.
#[derive(Debug, Clone)]
pub struct DoubledGraph {
    unit: BipartiteGraph,
    base_left: usize,
    base_right: usize,
    tight_edge_count: usize,
    bridge_nodes: Vec<NodeId>,
    present_count: usize,
}

impl DoubledGraph {
    /// Builds the doubled graph for `graph` under `cover`.
    ///
    /// `cover` only selects the tight edges here; whether it is feasible or
    /// minimum is checked by [`recover_matching`].
    pub fn build(graph: &BipartiteGraph, cover: &Cover) -> Self {
        let base_left = graph.left_count();
        let base_right = graph.right_count();
        assert_eq!(cover.left_values().len(), base_left, "cover does not fit the graph");
        assert_eq!(cover.right_values().len(), base_right, "cover does not fit the graph");

        let tight: Vec<_> = graph
            .edges()
            .iter()
            .filter(|e| cover.left(e.x) + cover.right(e.y) == e.weight)
            .collect();

        let mut left_present = vec![false; base_left];
        let mut right_present = vec![false; base_right];
        let mut edges = Vec::with_capacity(2 * tight.len() + base_left + base_right);
        for e in &tight {
            left_present[e.x] = true;
            right_present[e.y] = true;
            // First copy: x^a -> y^a.
            edges.push((e.x, e.y, 1));
            // Second copy: y^b -> x^b.
            edges.push((base_left + e.y, base_right + e.x, 1));
        }
        let mut bridge_nodes = Vec::new();
        for x in 0..base_left {
            if left_present[x] && cover.left(x) == 0 {
                edges.push((x, base_right + x, 1));
                bridge_nodes.push(NodeId::left(x));
            }
        }
        for y in 0..base_right {
            if right_present[y] && cover.right(y) == 0 {
                edges.push((base_left + y, y, 1));
                bridge_nodes.push(NodeId::right(y));
            }
        }
        let present_count = left_present.iter().filter(|&&p| p).count()
            + right_present.iter().filter(|&&p| p).count();

        let unit = BipartiteGraph::new(base_left + base_right, base_right + base_left, edges)
            .expect("doubled edges are distinct and in range by construction");
        DoubledGraph {
            unit,
            base_left,
            base_right,
            tight_edge_count: tight.len(),
            bridge_nodes,
            present_count,
        }
    }

    /// The doubled graph as a unit-weight bipartite graph.
    pub fn unit_graph(&self) -> &BipartiteGraph {
        &self.unit
    }

    /// Number of tight edges in the base graph.
    pub fn tight_edge_count(&self) -> usize {
        self.tight_edge_count
    }

    /// Base nodes whose two copies are joined by a bridge edge: exactly the
    /// zero-cover nodes incident to a tight edge.
    pub fn bridge_nodes(&self) -> &[NodeId] {
        &self.bridge_nodes
    }

    /// Number of base nodes incident to at least one tight edge.
    pub fn present_count(&self) -> usize {
        self.present_count
    }

    /// Number of doubled nodes, two per present base node.
    pub fn node_count(&self) -> usize {
        2 * self.present_count
    }

    pub fn edge_count(&self) -> usize {
        self.unit.edge_count()
    }

    /// Whether a matching of the doubled graph saturates every doubled node.
    pub fn is_perfect(&self, matching: &Matching) -> bool {
        2 * matching.len() == self.node_count()
    }

    /// The first-copy pairs of a doubled matching, as base-graph pairs.
    pub fn first_copy_pairs(&self, matching: &Matching) -> Vec<(usize, usize)> {
        matching
            .pairs()
            .iter()
            .copied()
            .filter(|&(x, y)| x < self.base_left && y < self.base_right)
            .collect()
    }
}

/// Extracts a maximum weight matching certified by the minimum cover
/// `cover`.
///
/// Returns `CoverNotOptimal` if `cover` is infeasible or not of minimum
/// weight; both conditions are detected from the doubled matching itself.
pub fn recover_matching(graph: &BipartiteGraph, cover: &Cover) -> Result<Matching> {
    if cover.left_values().len() != graph.left_count()
        || cover.right_values().len() != graph.right_count()
        || !graph.verify_cover(cover)
    {
        return Err(Error::CoverNotOptimal {
            reason: "supplied values are not a feasible cover of the graph".into(),
        });
    }
    let doubled = DoubledGraph::build(graph, cover);
    let doubled_matching = max_cardinality_matching(doubled.unit_graph())?;
    if !doubled.is_perfect(&doubled_matching) {
        return Err(Error::CoverNotOptimal {
            reason: format!(
                "doubled matching covers {} of {} doubled nodes",
                2 * doubled_matching.len(),
                doubled.node_count()
            ),
        });
    }
    let matching = Matching::new(graph, doubled.first_copy_pairs(&doubled_matching))?;
    if !graph.verify_duality(&matching, cover)? {
        return Err(Error::CoverNotOptimal {
            reason: format!(
                "recovered matching weight {} differs from cover weight {}",
                matching.weight(),
                cover.weight()
            ),
        });
    }
    Ok(matching)
}

/// A maximum weight matching together with its certifying minimum cover.
#[derive(Debug, Clone)]
pub struct Solution {
    pub matching: Matching,
    pub cover: Cover,
    /// Common weight of the matching and the cover.
    pub weight: Weight,
}

/// Solves a graph end to end: minimum cover by weight peeling, then an
/// explicit matching recovered from it.
pub fn solve(graph: &BipartiteGraph) -> Result<Solution> {
    let cover = compute_min_cover(graph);
    let matching = recover_matching(graph, &cover)?;
    let weight = matching.weight();
    Ok(Solution { matching, cover, weight })
}
