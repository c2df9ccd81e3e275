//! End-to-end runs on seeded random instances, sized beyond what the
//! property tests cover. Every expected value comes from an independent
//! reference solver at runtime, so these exercise the full pipeline on
//! graphs with hundreds of nodes.

use std::collections::HashSet;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use matchdecomp::oracle::{oracle_all_cavity, oracle_hungarian, oracle_mwm_exhaustive};
use matchdecomp::{
    all_cavity_validated, compute_mwm, decompose_check, solve, BipartiteGraph, Weight,
};

fn random_graph(
    seed: u64,
    left: usize,
    right: usize,
    edges: usize,
    max_weight: Weight,
) -> BipartiteGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut triples = Vec::with_capacity(edges);
    while triples.len() < edges {
        let x = rng.random_range(0..left);
        let y = rng.random_range(0..right);
        if seen.insert((x, y)) {
            triples.push((x, y, rng.random_range(1..=max_weight)));
        }
    }
    BipartiteGraph::new(left, right, triples).unwrap()
}

#[test]
fn agrees_with_assignment_solver_on_mid_size_graphs() {
    for seed in 0..8 {
        let g = random_graph(seed, 80, 80, 600, 50);
        assert_eq!(compute_mwm(&g), oracle_hungarian(&g).weight(), "seed {seed}");
    }
}

#[test]
fn agrees_with_assignment_solver_on_rectangular_graphs() {
    let wide = random_graph(11, 20, 150, 400, 30);
    assert_eq!(compute_mwm(&wide), oracle_hungarian(&wide).weight());

    let tall = random_graph(12, 150, 20, 400, 30);
    assert_eq!(compute_mwm(&tall), oracle_hungarian(&tall).weight());
}

#[test]
fn agrees_with_exhaustive_search_on_small_graphs() {
    for seed in 0..40 {
        let g = random_graph(100 + seed, 6, 6, 18, 9);
        assert_eq!(Ok(compute_mwm(&g)), oracle_mwm_exhaustive(&g), "seed {seed}");
    }
}

#[test]
fn solve_certifies_itself_on_a_large_graph() {
    let g = random_graph(7, 300, 300, 3000, 40);
    let s = solve(&g).unwrap();
    assert_eq!(s.weight, oracle_hungarian(&g).weight());
    assert_eq!(g.verify_duality(&s.matching, &s.cover), Ok(true));
}

#[test]
fn every_depth_splits_a_mid_size_graph_exactly() {
    let g = random_graph(21, 40, 40, 200, 12);
    let want = compute_mwm(&g);
    assert_eq!(want, oracle_hungarian(&g).weight());
    for depth in 1..=g.max_weight() {
        let (top, rest) = decompose_check(&g, depth).unwrap();
        assert_eq!(top + rest, want, "depth {depth}");
    }
}

#[test]
fn cavity_table_matches_per_node_resolves() {
    for seed in 0..4 {
        let g = random_graph(200 + seed, 30, 30, 150, 12);
        let s = solve(&g).unwrap();
        let table = all_cavity_validated(&g, &s.matching).unwrap();
        let want = oracle_all_cavity(&g);
        assert_eq!(table.base(), want.base(), "seed {seed}");
        assert_eq!(table.left_values(), want.left_values(), "seed {seed}");
        assert_eq!(table.right_values(), want.right_values(), "seed {seed}");
    }
}

#[test]
fn dense_unit_weight_graphs_reduce_to_cardinality_matching() {
    let g = random_graph(31, 60, 60, 1800, 1);
    let s = solve(&g).unwrap();
    assert_eq!(s.weight, oracle_hungarian(&g).weight());
    assert_eq!(s.matching.len() as Weight, s.weight);
}
