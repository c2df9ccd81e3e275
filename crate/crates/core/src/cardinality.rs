//! Maximum cardinality matching on unit-weight graphs, plus minimum vertex
//! covers read off the matching via alternating reachability.
//!
//! The matcher is Hopcroft-Karp with deterministic tie-breaking: left nodes
//! are scanned in index order and neighbors in adjacency (insertion) order,
//! so identical inputs always produce identical matchings and covers.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Cover, Matching, Weight};

/// Which side's unmatched nodes seed the alternating search that turns a
/// maximum matching into a minimum vertex cover.
///
/// Both choices yield a minimum cover; they generally pick different node
/// sets. Seeding from the left covers `(left not reached) + (right
/// reached)`; seeding from the right mirrors this.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KonigSeed {
    #[default]
    Left,
    Right,
}

/// Left-node adjacency of a unit-weight graph, the working form shared by
/// the matcher, the cover construction, and the weight-peeling solver.
#[derive(Debug, Clone)]
pub(crate) struct UnitGraph {
    pub left_count: usize,
    pub right_count: usize,
    /// `adj[x]` lists the right neighbors of left node `x` in insertion order.
    pub adj: Vec<Vec<usize>>,
}

impl UnitGraph {
    pub fn new(left_count: usize, right_count: usize) -> Self {
        UnitGraph { left_count, right_count, adj: vec![Vec::new(); left_count] }
    }

    pub fn from_graph(graph: &BipartiteGraph) -> Result<Self> {
        let mut unit = Self::new(graph.left_count(), graph.right_count());
        for e in graph.edges() {
            if e.weight != 1 {
                return Err(Error::NonUnitWeights { x: e.x, y: e.y, weight: e.weight });
            }
            unit.adj[e.x].push(e.y);
        }
        Ok(unit)
    }

    pub fn add_edge(&mut self, x: usize, y: usize) {
        self.adj[x].push(y);
    }
}

/// Maximum matching as mate arrays: `mate_left[x]` is the right partner of
/// left node `x`, if any, and symmetrically for `mate_right`.
#[derive(Debug, Clone)]
pub(crate) struct UnitMatching {
    pub mate_left: Vec<Option<usize>>,
    pub mate_right: Vec<Option<usize>>,
    pub size: usize,
}

impl UnitMatching {
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.mate_left
            .iter()
            .enumerate()
            .filter_map(|(x, mate)| mate.map(|y| (x, y)))
            .collect()
    }
}

const UNREACHED: usize = usize::MAX;

/// Hopcroft-Karp over a unit graph.
pub(crate) fn max_matching(unit: &UnitGraph) -> UnitMatching {
    let mut mate_left = vec![None; unit.left_count];
    let mut mate_right = vec![None; unit.right_count];
    let mut size = 0;
    let mut dist = vec![UNREACHED; unit.left_count];
    let mut queue = VecDeque::new();

    loop {
        // Layer the graph from all unmatched left nodes.
        queue.clear();
        for x in 0..unit.left_count {
            if mate_left[x].is_none() {
                dist[x] = 0;
                queue.push_back(x);
            } else {
                dist[x] = UNREACHED;
            }
        }
        let mut found = false;
        while let Some(x) = queue.pop_front() {
            for &y in &unit.adj[x] {
                match mate_right[y] {
                    None => found = true,
                    Some(next) => {
                        if dist[next] == UNREACHED {
                            dist[next] = dist[x] + 1;
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
        if !found {
            break;
        }
        // Augment along vertex-disjoint shortest paths.
        for x in 0..unit.left_count {
            if mate_left[x].is_none() && try_augment(unit, x, &mut mate_left, &mut mate_right, &mut dist) {
                size += 1;
            }
        }
    }

    UnitMatching { mate_left, mate_right, size }
}

fn try_augment(
    unit: &UnitGraph,
    x: usize,
    mate_left: &mut [Option<usize>],
    mate_right: &mut [Option<usize>],
    dist: &mut [usize],
) -> bool {
    for &y in &unit.adj[x] {
        let advance = match mate_right[y] {
            None => true,
            Some(next) => {
                dist[next] == dist[x] + 1
                    && try_augment(unit, next, mate_left, mate_right, dist)
            }
        };
        if advance {
            mate_left[x] = Some(y);
            mate_right[y] = Some(x);
            return true;
        }
    }
    // Dead end; keep later searches out of this subtree.
    dist[x] = UNREACHED;
    false
}

/// Nodes covered by the alternating-reachability construction, as index
/// lists per side.
pub(crate) fn cover_nodes(
    unit: &UnitGraph,
    matching: &UnitMatching,
    seed: KonigSeed,
) -> (Vec<usize>, Vec<usize>) {
    match seed {
        KonigSeed::Left => cover_from_left(unit, matching),
        KonigSeed::Right => {
            let mirrored = mirror(unit);
            let swapped = UnitMatching {
                mate_left: matching.mate_right.clone(),
                mate_right: matching.mate_left.clone(),
                size: matching.size,
            };
            let (right, left) = cover_from_left(&mirrored, &swapped);
            (left, right)
        }
    }
}

/// Alternating reachability from unmatched left nodes: left-to-right along
/// non-matching edges, right-to-left along matching edges. The cover is the
/// unreached left nodes plus the reached right nodes.
fn cover_from_left(unit: &UnitGraph, matching: &UnitMatching) -> (Vec<usize>, Vec<usize>) {
    let mut reached_left = vec![false; unit.left_count];
    let mut reached_right = vec![false; unit.right_count];
    let mut queue = VecDeque::new();
    for x in 0..unit.left_count {
        if matching.mate_left[x].is_none() {
            reached_left[x] = true;
            queue.push_back(x);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &y in &unit.adj[x] {
            if matching.mate_left[x] == Some(y) || reached_right[y] {
                continue;
            }
            reached_right[y] = true;
            if let Some(next) = matching.mate_right[y] {
                if !reached_left[next] {
                    reached_left[next] = true;
                    queue.push_back(next);
                }
            }
        }
    }
    let left = (0..unit.left_count).filter(|&x| !reached_left[x]).collect();
    let right = (0..unit.right_count).filter(|&y| reached_right[y]).collect();
    (left, right)
}

fn mirror(unit: &UnitGraph) -> UnitGraph {
    let mut mirrored = UnitGraph::new(unit.right_count, unit.left_count);
    for (x, ys) in unit.adj.iter().enumerate() {
        for &y in ys {
            mirrored.adj[y].push(x);
        }
    }
    mirrored
}

/// Maximum cardinality matching of a unit-weight graph.
///
/// Errors with `NonUnitWeights` if any edge weight differs from 1.
pub fn max_cardinality_matching(graph: &BipartiteGraph) -> Result<Matching> {
    let unit = UnitGraph::from_graph(graph)?;
    let matching = max_matching(&unit);
    Matching::new(graph, matching.pairs())
}

/// Minimum vertex cover certified by a maximum matching, seeded from the
/// left side.
///
/// Returns `MatchingNotMaximum` if the constructed cover does not have
/// weight equal to the matching size, which happens exactly when `matching`
/// is not maximum.
pub fn konig_cover(graph: &BipartiteGraph, matching: &Matching) -> Result<Cover> {
    konig_cover_seeded(graph, matching, KonigSeed::Left)
}

/// [`konig_cover`] with an explicit choice of seed side.
pub fn konig_cover_seeded(
    graph: &BipartiteGraph,
    matching: &Matching,
    seed: KonigSeed,
) -> Result<Cover> {
    let unit = UnitGraph::from_graph(graph)?;
    matching.check_against(graph)?;
    let mut mate_left = vec![None; graph.left_count()];
    let mut mate_right = vec![None; graph.right_count()];
    for &(x, y) in matching.pairs() {
        mate_left[x] = Some(y);
        mate_right[y] = Some(x);
    }
    let unit_matching = UnitMatching { mate_left, mate_right, size: matching.len() };
    let (left_nodes, right_nodes) = cover_nodes(&unit, &unit_matching, seed);

    let mut left = vec![0; graph.left_count()];
    let mut right = vec![0; graph.right_count()];
    for &x in &left_nodes {
        left[x] = 1;
    }
    for &y in &right_nodes {
        right[y] = 1;
    }
    let cover = Cover::from_values(left, right);
    let cover_weight = cover.weight();
    if cover_weight != matching.len() as Weight || !graph.verify_cover(&cover) {
        return Err(Error::MatchingNotMaximum {
            cover_weight,
            matching_size: matching.len(),
        });
    }
    Ok(cover)
}
