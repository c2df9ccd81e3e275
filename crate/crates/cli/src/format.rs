//! The instance file grammar and the JSON result document.
//!
//! Instance files are line oriented and whitespace separated:
//!
//! ```text
//! c optional comment
//! p bmatch <left_count> <right_count> <edge_count>
//! e <x> <y> <w>      one per edge, node ids 1-based, weight >= 1
//! m <x> <y>          optional matching hint, used by the cavity command
//! ```
//!
//! Node ids are 1-based in files and 0-based everywhere in the library;
//! the translation happens here and nowhere else.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use matchdecomp::{BipartiteGraph, CavityTable, Cover, Matching, Weight};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// A parsed instance file: the graph plus any `m`-line matching hint.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: BipartiteGraph,
    /// Pairs from `m` lines in file order, already 0-based; empty when the
    /// file carries no matching.
    pub hint_pairs: Vec<(usize, usize)>,
}

fn parse_error(line: usize, reason: impl Into<String>) -> CliError {
    CliError::Parse { line, reason: reason.into() }
}

fn expect_number<T: std::str::FromStr>(
    line: usize,
    token: Option<&str>,
    what: &str,
) -> Result<T, CliError> {
    let token = token.ok_or_else(|| parse_error(line, format!("missing {what}")))?;
    token.parse().map_err(|_| parse_error(line, format!("{what} {token:?} is not a valid number")))
}

fn expect_id(line: usize, token: Option<&str>, what: &str) -> Result<usize, CliError> {
    let id: usize = expect_number(line, token, what)?;
    if id == 0 {
        return Err(parse_error(line, format!("{what} must be 1-based, got 0")));
    }
    Ok(id)
}

fn expect_line_end(line: usize, token: Option<&str>) -> Result<(), CliError> {
    match token {
        None => Ok(()),
        Some(extra) => Err(parse_error(line, format!("unexpected trailing token {extra:?}"))),
    }
}

/// Parses an instance file. Grammar violations report the offending line;
/// graph invariant violations (duplicate edges, zero weights, ids past the
/// declared counts) surface as constraint errors.
pub fn parse_instance(text: &str) -> Result<Instance, CliError> {
    let mut header: Option<(usize, usize, usize, usize)> = None;
    let mut triples = Vec::new();
    let mut hints = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let mut tokens = raw.split_whitespace();
        let Some(kind) = tokens.next() else { continue };
        match kind {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(parse_error(line, "duplicate problem line"));
                }
                if tokens.next() != Some("bmatch") {
                    return Err(parse_error(line, "expected \"p bmatch <left> <right> <edges>\""));
                }
                let left = expect_number(line, tokens.next(), "left count")?;
                let right = expect_number(line, tokens.next(), "right count")?;
                let edges = expect_number(line, tokens.next(), "edge count")?;
                expect_line_end(line, tokens.next())?;
                header = Some((line, left, right, edges));
            }
            "e" => {
                if header.is_none() {
                    return Err(parse_error(line, "edge line before the problem line"));
                }
                let x = expect_id(line, tokens.next(), "left id")?;
                let y = expect_id(line, tokens.next(), "right id")?;
                let w: Weight = expect_number(line, tokens.next(), "weight")?;
                expect_line_end(line, tokens.next())?;
                triples.push((x - 1, y - 1, w));
            }
            "m" => {
                if header.is_none() {
                    return Err(parse_error(line, "matching line before the problem line"));
                }
                let x = expect_id(line, tokens.next(), "left id")?;
                let y = expect_id(line, tokens.next(), "right id")?;
                expect_line_end(line, tokens.next())?;
                hints.push((x - 1, y - 1));
            }
            other => {
                return Err(parse_error(line, format!("unknown line kind {other:?}")));
            }
        }
    }
    let Some((header_line, left, right, edges)) = header else {
        return Err(parse_error(1, "missing problem line"));
    };
    if triples.len() != edges {
        return Err(parse_error(
            header_line,
            format!("problem line declares {edges} edges, file has {}", triples.len()),
        ));
    }
    let graph = BipartiteGraph::new(left, right, triples).map_err(shift_to_file_ids)?;
    Ok(Instance { graph, hint_pairs: hints })
}

/// Constraint errors from graph construction carry 0-based ids; shift the
/// ones that quote node ids back to the file's 1-based convention.
fn shift_to_file_ids(error: matchdecomp::Error) -> CliError {
    use matchdecomp::Error::{DuplicateEdge, IndexOutOfRange, ZeroWeight};
    let shifted = match error {
        DuplicateEdge { x, y } => DuplicateEdge { x: x + 1, y: y + 1 },
        ZeroWeight { x, y } => ZeroWeight { x: x + 1, y: y + 1 },
        IndexOutOfRange { side, index, count } => {
            IndexOutOfRange { side, index: index + 1, count }
        }
        other => other,
    };
    CliError::Constraint(shifted)
}

/// Writes a graph in the instance grammar; `parse_instance` returns an
/// identical graph (comments excluded).
pub fn serialize_instance(graph: &BipartiteGraph, comments: &[String]) -> String {
    let mut out = String::new();
    for comment in comments {
        let _ = writeln!(out, "c {comment}");
    }
    let _ = writeln!(
        out,
        "p bmatch {} {} {}",
        graph.left_count(),
        graph.right_count(),
        graph.edge_count()
    );
    for e in graph.edges() {
        let _ = writeln!(out, "e {} {} {}", e.x + 1, e.y + 1, e.weight);
    }
    out
}

/// Cover values in document form, split by side, with the total spelled
/// out so readers need no arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSection {
    pub left: Vec<Weight>,
    pub right: Vec<Weight>,
    pub weight: Weight,
}

impl CoverSection {
    pub fn from_cover(cover: &Cover) -> Self {
        CoverSection {
            left: cover.left_values().to_vec(),
            right: cover.right_values().to_vec(),
            weight: cover.weight(),
        }
    }
}

/// Cavity weights in document form: `left[i]` is the optimum after
/// deleting the (i+1)-th left node, and likewise on the right.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CavitySection {
    pub base: Weight,
    pub left: Vec<Weight>,
    pub right: Vec<Weight>,
}

impl CavitySection {
    pub fn from_table(table: &CavityTable) -> Self {
        CavitySection {
            base: table.base(),
            left: table.left_values().to_vec(),
            right: table.right_values().to_vec(),
        }
    }
}

/// The single output schema shared by every computing subcommand. Node
/// ids inside are 1-based, matching the instance grammar.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResultDocument {
    pub mwm: Weight,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matching: Option<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover: Option<CoverSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cavity: Option<CavitySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duality_ok: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    /// Wall-clock milliseconds per phase; always present.
    #[serde(default)]
    pub timings: BTreeMap<String, f64>,
}

impl ResultDocument {
    pub fn new(mwm: Weight) -> Self {
        ResultDocument {
            mwm,
            matching: None,
            cover: None,
            cavity: None,
            duality_ok: None,
            verified: None,
            timings: BTreeMap::new(),
        }
    }

    pub fn with_matching(mut self, matching: &Matching) -> Self {
        self.matching =
            Some(matching.pairs().iter().map(|&(x, y)| (x + 1, y + 1)).collect());
        self
    }

    pub fn with_cover(mut self, cover: &Cover) -> Self {
        self.cover = Some(CoverSection::from_cover(cover));
        self
    }

    pub fn with_cavity(mut self, table: &CavityTable) -> Self {
        self.cavity = Some(CavitySection::from_table(table));
        self
    }

    pub fn with_timing(mut self, phase: &str, milliseconds: f64) -> Self {
        self.timings.insert(phase.to_string(), milliseconds);
        self
    }

    /// Rebuilds the claimed matching against a concrete graph. Ill-formed
    /// ids are a document error; pairs that are no matching of this graph
    /// are a verification mismatch.
    pub fn matching_for(&self, graph: &BipartiteGraph) -> Result<Option<Matching>, CliError> {
        let Some(pairs) = &self.matching else { return Ok(None) };
        let mut shifted = Vec::with_capacity(pairs.len());
        for &(x, y) in pairs {
            if x == 0 || y == 0 {
                return Err(CliError::BadDocument("matching ids are 1-based".into()));
            }
            shifted.push((x - 1, y - 1));
        }
        let matching = Matching::new(graph, shifted)
            .map_err(|e| CliError::Mismatch(format!("claimed matching: {e}")))?;
        Ok(Some(matching))
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("document serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::BadDocument(e.to_string()))
    }
}
