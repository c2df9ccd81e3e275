//! Terminal front end for the matching solver: instance files in, a
//! structured result document out, plus an instance generator and a
//! benchmark harness.

use std::io;

use thiserror::Error;

pub mod bench;
pub mod commands;
pub mod format;
pub mod gen;

/// Anything a command can fail with; each variant maps to a process exit
/// code so scripts can tell the failure classes apart.
#[derive(Debug, Error)]
pub enum CliError {
    /// The instance file violates the grammar.
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    /// A result document is not valid JSON for the expected schema.
    #[error("result document: {0}")]
    BadDocument(String),
    /// The input parsed but violates a graph or matching invariant.
    #[error(transparent)]
    Constraint(#[from] matchdecomp::Error),
    /// The generator was asked for more distinct edges than exist.
    #[error("cannot place {requested} distinct edges in a {left}x{right} graph")]
    TooManyEdges { requested: usize, left: usize, right: usize },
    /// A claimed result disagrees with what the instance actually yields.
    #[error("verification failed: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    /// Exit code contract: 2 for parse errors, 3 for constraint
    /// violations, 4 for verification mismatches, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::BadDocument(_) => 2,
            // A matching that fails opt-in optimality validation is a
            // mismatch between claim and instance, not a malformed input.
            CliError::Constraint(matchdecomp::Error::MatchingNotOptimal { .. }) => 4,
            CliError::Constraint(_) | CliError::TooManyEdges { .. } => 3,
            CliError::Mismatch(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}
