//! Implementations behind the subcommands. Each one reads its input,
//! computes, and writes either a result document or plain text to the
//! chosen output target.

use std::fs;
use std::io::Read;
use std::path::Path;
use std::time::Instant;

use matchdecomp::oracle::{oracle_all_cavity, oracle_hungarian, oracle_mwm_exhaustive};
use matchdecomp::{
    all_cavity, all_cavity_validated, compute_min_cover, compute_mwm, solve, BipartiteGraph,
    CavityTable, Cover, Matching, NodeId, Weight,
};

use crate::format::{parse_instance, serialize_instance, CavitySection, Instance, ResultDocument};
use crate::{bench, gen, CliError};

/// Which reference solver `verify` trusts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OracleKind {
    Exhaustive,
    Hungarian,
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Reads the whole input, with `-` meaning standard input.
pub fn read_input(input: &str) -> Result<String, CliError> {
    if input == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        Ok(fs::read_to_string(input)?)
    }
}

/// Writes to the file when given, standard output otherwise.
pub fn write_output(target: Option<&Path>, text: &str) -> Result<(), CliError> {
    match target {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn parse_timed(input: &str) -> Result<(Instance, f64), CliError> {
    let start = Instant::now();
    let text = read_input(input)?;
    let instance = parse_instance(&text)?;
    Ok((instance, elapsed_ms(start)))
}

pub fn cmd_mwm(input: &str, output: Option<&Path>) -> Result<(), CliError> {
    let (instance, parse_ms) = parse_timed(input)?;
    let start = Instant::now();
    let weight = compute_mwm(&instance.graph);
    let doc = ResultDocument::new(weight)
        .with_timing("parse_ms", parse_ms)
        .with_timing("solve_ms", elapsed_ms(start));
    write_output(output, &doc.to_json())
}

pub fn cmd_cover(input: &str, output: Option<&Path>) -> Result<(), CliError> {
    let (instance, parse_ms) = parse_timed(input)?;
    let start = Instant::now();
    let cover = compute_min_cover(&instance.graph);
    let doc = ResultDocument::new(cover.weight())
        .with_cover(&cover)
        .with_timing("parse_ms", parse_ms)
        .with_timing("solve_ms", elapsed_ms(start));
    write_output(output, &doc.to_json())
}

pub fn cmd_match(input: &str, output: Option<&Path>) -> Result<(), CliError> {
    let (instance, parse_ms) = parse_timed(input)?;
    let start = Instant::now();
    let solution = solve(&instance.graph)?;
    let solve_ms = elapsed_ms(start);
    let duality_ok = instance.graph.verify_duality(&solution.matching, &solution.cover)?;
    let mut doc = ResultDocument::new(solution.weight)
        .with_matching(&solution.matching)
        .with_cover(&solution.cover)
        .with_timing("parse_ms", parse_ms)
        .with_timing("solve_ms", solve_ms);
    doc.duality_ok = Some(duality_ok);
    write_output(output, &doc.to_json())
}

pub fn cmd_cavity(input: &str, output: Option<&Path>, validate: bool) -> Result<(), CliError> {
    let (instance, parse_ms) = parse_timed(input)?;
    let graph = &instance.graph;

    // Take the matching from the file's `m` lines when present, otherwise
    // compute one. A supplied matching is trusted to be optimal unless
    // --validate is given; the table is relative to it either way.
    let start = Instant::now();
    let (matching, cover) = if instance.hint_pairs.is_empty() {
        let solution = solve(graph)?;
        (solution.matching, Some(solution.cover))
    } else {
        (Matching::new(graph, instance.hint_pairs.clone())?, None)
    };
    let matching_ms = elapsed_ms(start);

    let start = Instant::now();
    let table = if validate {
        all_cavity_validated(graph, &matching)?
    } else {
        all_cavity(graph, &matching)?
    };
    let cavity_ms = elapsed_ms(start);

    let mut doc = ResultDocument::new(table.base())
        .with_matching(&matching)
        .with_cavity(&table)
        .with_timing("parse_ms", parse_ms)
        .with_timing("matching_ms", matching_ms)
        .with_timing("cavity_ms", cavity_ms);
    if let Some(cover) = cover {
        doc = doc.with_cover(&cover);
    }
    write_output(output, &doc.to_json())
}

fn oracle_mwm(kind: OracleKind, graph: &BipartiteGraph) -> Result<Weight, CliError> {
    match kind {
        OracleKind::Exhaustive => Ok(oracle_mwm_exhaustive(graph)?),
        OracleKind::Hungarian => Ok(oracle_hungarian(graph).weight()),
    }
}

fn oracle_cavity(kind: OracleKind, graph: &BipartiteGraph) -> Result<CavityTable, CliError> {
    match kind {
        OracleKind::Hungarian => Ok(oracle_all_cavity(graph)),
        OracleKind::Exhaustive => {
            let base = oracle_mwm_exhaustive(graph)?;
            let mut left = Vec::with_capacity(graph.left_count());
            for x in 0..graph.left_count() {
                left.push(oracle_mwm_exhaustive(&graph.without_node(NodeId::left(x)))?);
            }
            let mut right = Vec::with_capacity(graph.right_count());
            for y in 0..graph.right_count() {
                right.push(oracle_mwm_exhaustive(&graph.without_node(NodeId::right(y)))?);
            }
            Ok(CavityTable::from_parts(base, left, right))
        }
    }
}

fn mismatch(reason: String) -> Result<(), CliError> {
    Err(CliError::Mismatch(reason))
}

/// Re-checks every claim in a result document against the instance,
/// recomputing the optimum with the chosen oracle.
pub fn cmd_verify(
    input: &str,
    result_path: &Path,
    kind: OracleKind,
    validate: bool,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let (instance, parse_ms) = parse_timed(input)?;
    let graph = &instance.graph;
    let doc = ResultDocument::from_json(&fs::read_to_string(result_path)?)?;

    let start = Instant::now();
    let want = oracle_mwm(kind, graph)?;
    if doc.mwm != want {
        return mismatch(format!("document claims mwm {}, oracle computed {}", doc.mwm, want));
    }
    let claimed_matching = doc.matching_for(graph)?;
    if let Some(matching) = &claimed_matching {
        if matching.weight() != want {
            return mismatch(format!(
                "claimed matching weighs {}, optimum is {}",
                matching.weight(),
                want
            ));
        }
    }
    if let Some(section) = &doc.cover {
        if section.left.len() != graph.left_count() || section.right.len() != graph.right_count() {
            return mismatch("claimed cover has the wrong shape for the instance".into());
        }
        let cover = Cover::from_values(section.left.clone(), section.right.clone());
        if cover.weight() != section.weight {
            return mismatch(format!(
                "claimed cover weight {} does not sum to its own values {}",
                section.weight,
                cover.weight()
            ));
        }
        if !graph.verify_cover(&cover) {
            return mismatch("claimed cover leaves an edge under-covered".into());
        }
        if cover.weight() != want {
            return mismatch(format!("claimed cover weighs {}, optimum is {}", cover.weight(), want));
        }
        if let Some(matching) = &claimed_matching {
            if !graph.verify_duality(matching, &cover)? {
                return mismatch("claimed matching and cover fail the duality check".into());
            }
        }
    }
    if validate {
        if let Some(section) = &doc.cavity {
            let table = oracle_cavity(kind, graph)?;
            if *section != CavitySection::from_table(&table) {
                return mismatch("claimed cavity table disagrees with per-node re-solves".into());
            }
        }
    }
    let verify_ms = elapsed_ms(start);

    let mut out = ResultDocument::new(want)
        .with_timing("parse_ms", parse_ms)
        .with_timing("verify_ms", verify_ms);
    out.verified = Some(true);
    write_output(output, &out.to_json())
}

pub fn cmd_gen(
    left: usize,
    right: usize,
    edges: usize,
    max_weight: Weight,
    seed: u64,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let graph = gen::gen_random(left, right, edges, max_weight, seed)?;
    let comment =
        format!("seed {seed} nodes {left}x{right} edges {edges} maxweight {max_weight}");
    write_output(output, &serialize_instance(&graph, &[comment]))
}

pub fn cmd_bench(repeat: usize, quick: bool, output: Option<&Path>) -> Result<(), CliError> {
    let cells = bench::default_grid(quick);
    let reports = bench::run_grid(&cells, repeat);
    write_output(output, &bench::render_table(&reports))
}
