//! Reference solvers used as ground truth in tests and benchmarks.
//!
//! These share no code with the peeling solver: the small-scale oracle
//! enumerates matchings outright, the mid-scale oracle is the classic
//! potentials-based assignment algorithm, and the cavity oracle simply
//! re-solves the graph once per node.

use std::collections::HashMap;

use crate::cavity::CavityTable;
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Cover, Matching, NodeId, Weight};

/// Edge-count ceiling for [`oracle_mwm_exhaustive`].
pub const EXHAUSTIVE_EDGE_LIMIT: usize = 25;

/// Maximum matching weight by exhaustive enumeration.
///
/// Recursively decides, node by node, whom each left node is matched to (or
/// that it stays unmatched), trying every combination. Only instances with
/// at most [`EXHAUSTIVE_EDGE_LIMIT`] edges are accepted; larger ones return
/// `TooLarge`.
pub fn oracle_mwm_exhaustive(graph: &BipartiteGraph) -> Result<Weight> {
    if graph.edge_count() > EXHAUSTIVE_EDGE_LIMIT {
        return Err(Error::TooLarge {
            edges: graph.edge_count(),
            limit: EXHAUSTIVE_EDGE_LIMIT,
        });
    }
    // Compress to the nodes that actually carry edges so the used-right set
    // fits in a bitmask (at most 25 distinct right nodes).
    let mut right_bit = HashMap::new();
    let mut choices: HashMap<usize, Vec<(u32, Weight)>> = HashMap::new();
    for e in graph.edges() {
        let next = right_bit.len() as u32;
        let bit = 1u32 << *right_bit.entry(e.y).or_insert(next);
        choices.entry(e.x).or_default().push((bit, e.weight));
    }
    let per_left: Vec<Vec<(u32, Weight)>> = choices.into_values().collect();

    fn best(per_left: &[Vec<(u32, Weight)>], used: u32) -> Weight {
        let Some((options, rest)) = per_left.split_first() else {
            return 0;
        };
        let mut top = best(rest, used);
        for &(bit, weight) in options {
            if used & bit == 0 {
                top = top.max(weight + best(rest, used | bit));
            }
        }
        top
    }
    Ok(best(&per_left, 0))
}

/// A matching plus the dual potentials that certify it.
#[derive(Debug, Clone)]
pub struct HungarianSolution {
    pub matching: Matching,
    /// Per-node potentials; a feasible cover of the same weight as the
    /// matching, so the pair always passes duality verification.
    pub potentials: Cover,
}

impl HungarianSolution {
    pub fn weight(&self) -> Weight {
        self.matching.weight()
    }
}

/// Maximum matching weight by the O(n^3) potentials-based assignment
/// algorithm.
///
/// The graph is implicitly padded to a square matrix with zero-weight
/// slots; since genuine weights are at least 1, padded slots never displace
/// a real edge. Potentials start at row maxima, only shrink toward zero,
/// and are returned restricted to the real nodes.
pub fn oracle_hungarian(graph: &BipartiteGraph) -> HungarianSolution {
    let left = graph.left_count();
    let right = graph.right_count();
    let dim = left.max(right);
    if dim == 0 || graph.edge_count() == 0 {
        return HungarianSolution {
            matching: Matching::empty(),
            potentials: Cover::zero(left, right),
        };
    }

    let mut weight = vec![0 as Weight; dim * dim];
    for e in graph.edges() {
        weight[e.x * dim + e.y] = e.weight;
    }
    let mut row_potential: Vec<Weight> = (0..dim)
        .map(|i| weight[i * dim..(i + 1) * dim].iter().copied().max().unwrap())
        .collect();
    let mut col_potential = vec![0 as Weight; dim];
    let mut row_mate: Vec<Option<usize>> = vec![None; dim];
    let mut col_mate: Vec<Option<usize>> = vec![None; dim];

    for root in 0..dim {
        let mut in_tree_row = vec![false; dim];
        let mut in_tree_col = vec![false; dim];
        in_tree_row[root] = true;
        // Per column: least slack to any tree row, and which row attains it.
        let mut slack: Vec<Weight> = (0..dim)
            .map(|j| row_potential[root] + col_potential[j] - weight[root * dim + j])
            .collect();
        let mut slack_row = vec![root; dim];

        loop {
            let mut delta = Weight::MAX;
            let mut pivot = 0;
            for j in 0..dim {
                if !in_tree_col[j] && slack[j] < delta {
                    delta = slack[j];
                    pivot = j;
                }
            }
            if delta > 0 {
                for i in 0..dim {
                    if in_tree_row[i] {
                        row_potential[i] -= delta;
                    }
                }
                for j in 0..dim {
                    if in_tree_col[j] {
                        col_potential[j] += delta;
                    } else {
                        slack[j] -= delta;
                    }
                }
            }
            in_tree_col[pivot] = true;
            match col_mate[pivot] {
                None => {
                    // Augment back to the root along recorded tree edges.
                    let mut j = pivot;
                    loop {
                        let i = slack_row[j];
                        let previous = row_mate[i];
                        row_mate[i] = Some(j);
                        col_mate[j] = Some(i);
                        match previous {
                            Some(next) => j = next,
                            None => break,
                        }
                    }
                    break;
                }
                Some(row) => {
                    in_tree_row[row] = true;
                    for j in 0..dim {
                        if !in_tree_col[j] {
                            let s = row_potential[row] + col_potential[j] - weight[row * dim + j];
                            if s < slack[j] {
                                slack[j] = s;
                                slack_row[j] = row;
                            }
                        }
                    }
                }
            }
        }
    }

    let pairs: Vec<_> = (0..left)
        .filter_map(|i| match row_mate[i] {
            Some(j) if j < right && weight[i * dim + j] > 0 => Some((i, j)),
            _ => None,
        })
        .collect();
    let matching = Matching::new(graph, pairs).expect("assignment pairs are edges");
    let potentials = Cover::from_values(
        row_potential[..left].to_vec(),
        col_potential[..right].to_vec(),
    );
    HungarianSolution { matching, potentials }
}

/// Cavity weights by brute force: re-solve the graph once per node.
pub fn oracle_all_cavity(graph: &BipartiteGraph) -> CavityTable {
    let base = oracle_hungarian(graph).weight();
    let left = (0..graph.left_count())
        .map(|x| oracle_hungarian(&graph.without_node(NodeId::left(x))).weight())
        .collect();
    let right = (0..graph.right_count())
        .map(|y| oracle_hungarian(&graph.without_node(NodeId::right(y))).weight())
        .collect();
    CavityTable::from_parts(base, left, right)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_graph() -> BipartiteGraph {
        BipartiteGraph::new(2, 2, vec![(0, 0, 3), (0, 1, 2), (1, 0, 2)]).unwrap()
    }

    #[test]
    fn exhaustive_solves_samples() {
        assert_eq!(oracle_mwm_exhaustive(&sample_graph()), Ok(4));
        let single = BipartiteGraph::new(1, 1, vec![(0, 0, 5)]).unwrap();
        assert_eq!(oracle_mwm_exhaustive(&single), Ok(5));
        assert_eq!(oracle_mwm_exhaustive(&BipartiteGraph::empty(3, 3)), Ok(0));
    }

    #[test]
    fn exhaustive_rejects_large_instances() {
        let edges: Vec<_> = (0..6).flat_map(|x| (0..6).map(move |y| (x, y, 1))).collect();
        let g = BipartiteGraph::new(6, 6, edges).unwrap();
        assert_eq!(
            oracle_mwm_exhaustive(&g),
            Err(Error::TooLarge { edges: 36, limit: EXHAUSTIVE_EDGE_LIMIT })
        );
    }

    #[test]
    fn hungarian_solves_sample_graph() {
        let solution = oracle_hungarian(&sample_graph());
        assert_eq!(solution.weight(), 4);
        assert_eq!(
            sample_graph().verify_duality(&solution.matching, &solution.potentials),
            Ok(true)
        );
    }

    #[test]
    fn hungarian_handles_rectangles_and_empties() {
        let wide = BipartiteGraph::new(1, 4, vec![(0, 1, 2), (0, 3, 7)]).unwrap();
        let solution = oracle_hungarian(&wide);
        assert_eq!(solution.weight(), 7);
        assert_eq!(solution.matching.pairs(), &[(0, 3)]);

        let tall = BipartiteGraph::new(4, 1, vec![(1, 0, 3), (3, 0, 2)]).unwrap();
        assert_eq!(oracle_hungarian(&tall).weight(), 3);

        assert_eq!(oracle_hungarian(&BipartiteGraph::empty(0, 0)).weight(), 0);
        assert_eq!(oracle_hungarian(&BipartiteGraph::empty(2, 5)).weight(), 0);
    }

    #[test]
    fn hungarian_matches_exhaustive_on_fixed_cases() {
        let cases = vec![
            BipartiteGraph::new(3, 3, vec![(0, 0, 4), (0, 1, 1), (1, 0, 2), (1, 2, 3), (2, 1, 5)])
                .unwrap(),
            BipartiteGraph::new(2, 3, vec![(0, 0, 2), (0, 1, 2), (1, 1, 2), (1, 2, 1)]).unwrap(),
            BipartiteGraph::new(4, 2, vec![(0, 0, 1), (1, 0, 6), (2, 1, 2), (3, 1, 2)]).unwrap(),
        ];
        for g in cases {
            let solution = oracle_hungarian(&g);
            assert_eq!(Ok(solution.weight()), oracle_mwm_exhaustive(&g));
            assert_eq!(g.verify_duality(&solution.matching, &solution.potentials), Ok(true));
        }
    }

    #[test]
    fn cavity_oracle_on_sample_graph() {
        let table = oracle_all_cavity(&sample_graph());
        assert_eq!(table.base(), 4);
        assert_eq!(table.left_values(), &[2, 3]);
        assert_eq!(table.right_values(), &[2, 3]);
    }
}
