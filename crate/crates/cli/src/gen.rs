//! Random instance generation, deterministic per seed.

use std::collections::HashSet;

use matchdecomp::{BipartiteGraph, Weight};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::CliError;

/// Samples `edges` distinct endpoint pairs uniformly without replacement
/// and gives each a weight uniform on `1..=max_weight`. The same seed
/// always yields the same instance.
pub fn gen_random(
    left: usize,
    right: usize,
    edges: usize,
    max_weight: Weight,
    seed: u64,
) -> Result<BipartiteGraph, CliError> {
    let available = left.saturating_mul(right);
    if edges > available {
        return Err(CliError::TooManyEdges { requested: edges, left, right });
    }
    if edges > 0 && max_weight == 0 {
        return Err(matchdecomp::Error::InfeasibleInput(
            "max weight must be at least 1".into(),
        )
        .into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Sparse requests reject duplicates on the fly; dense ones shuffle the
    // pair space instead, which stays linear even at full density.
    let pairs: Vec<(usize, usize)> = if edges * 2 > available {
        let mut slots: Vec<usize> = (0..available).collect();
        for i in 0..edges {
            let j = rng.random_range(i..available);
            slots.swap(i, j);
        }
        slots[..edges].iter().map(|&k| (k / right, k % right)).collect()
    } else {
        let mut seen = HashSet::with_capacity(edges);
        let mut picked = Vec::with_capacity(edges);
        while picked.len() < edges {
            let pair = (rng.random_range(0..left), rng.random_range(0..right));
            if seen.insert(pair) {
                picked.push(pair);
            }
        }
        picked
    };
    let triples: Vec<_> = pairs
        .into_iter()
        .map(|(x, y)| (x, y, rng.random_range(1..=max_weight)))
        .collect();
    Ok(BipartiteGraph::new(left, right, triples).expect("sampled edges are distinct and in range"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_density_unit_request_yields_the_complete_graph() {
        let g = gen_random(2, 2, 4, 1, 9).unwrap();
        assert_eq!(g.edge_count(), 4);
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(g.weight_of(x, y), Some(1));
            }
        }
    }

    #[test]
    fn same_seed_gives_the_same_instance() {
        assert_eq!(gen_random(10, 10, 30, 5, 42).unwrap(), gen_random(10, 10, 30, 5, 42).unwrap());
        assert_ne!(gen_random(10, 10, 30, 5, 42).unwrap(), gen_random(10, 10, 30, 5, 43).unwrap());
    }

    #[test]
    fn respects_the_requested_shape() {
        let g = gen_random(10, 10, 30, 5, 7).unwrap();
        assert_eq!((g.left_count(), g.right_count(), g.edge_count()), (10, 10, 30));
        assert!(g.max_weight() <= 5);
        assert!(g.edges().iter().all(|e| e.weight >= 1));
    }

    #[test]
    fn rejects_more_edges_than_pairs() {
        let err = gen_random(2, 2, 5, 3, 0).unwrap_err();
        assert_eq!(
            err.to_string(),
            "cannot place 5 distinct edges in a 2x2 graph"
        );
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn handles_empty_requests() {
        let g = gen_random(0, 5, 0, 3, 1).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(gen_random(3, 3, 0, 0, 1).unwrap().edge_count(), 0);
    }
}
