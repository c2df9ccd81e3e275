use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use matchdecomp_cli::commands::{
    cmd_bench, cmd_cavity, cmd_cover, cmd_gen, cmd_match, cmd_mwm, cmd_verify, OracleKind,
};
use matchdecomp_cli::CliError;

/// Maximum weight bipartite matching via unit-slice peeling.
#[derive(Parser)]
#[command(name = "matchdecomp", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Instance file; "-" reads standard input.
    #[arg(long, default_value = "-")]
    input: String,
    /// Write the result here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum matching weight of an instance.
    Mwm(InputArgs),
    /// Minimum weight cover of an instance.
    Cover(InputArgs),
    /// Optimum matching plus a certifying cover.
    Match(InputArgs),
    /// Matching weight after deleting each single node.
    Cavity {
        #[command(flatten)]
        io: InputArgs,
        /// Check that the matching taken from "m" lines is optimal.
        #[arg(long)]
        validate: bool,
    },
    /// Re-check a result document against an instance.
    Verify {
        #[command(flatten)]
        io: InputArgs,
        /// Result document to check.
        #[arg(long)]
        result: PathBuf,
        /// Reference solver used for the re-check.
        #[arg(long, value_enum, default_value = "hungarian")]
        oracle: OracleKind,
        /// Also re-check any cavity table in the document.
        #[arg(long)]
        validate: bool,
    },
    /// Generate a random instance.
    Gen {
        /// Node counts as one number for both sides or LEFTxRIGHT.
        #[arg(long, value_parser = parse_shape)]
        nodes: (usize, usize),
        /// Number of distinct edges to sample.
        #[arg(long)]
        edges: usize,
        /// Weights are uniform on 1..=MAXWEIGHT.
        #[arg(long)]
        maxweight: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the instance here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Time the solver against the assignment oracle over a grid.
    Bench {
        /// Runs per cell; medians are reported.
        #[arg(long, default_value_t = 3)]
        repeat: usize,
        /// Use a small grid that finishes in well under a second.
        #[arg(long)]
        quick: bool,
        /// Write the table here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn parse_shape(text: &str) -> Result<(usize, usize), String> {
    let parse = |part: &str| {
        part.parse::<usize>().map_err(|_| format!("invalid node count {part:?}"))
    };
    match text.split_once('x') {
        Some((left, right)) => Ok((parse(left)?, parse(right)?)),
        None => parse(text).map(|n| (n, n)),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Mwm(io) => cmd_mwm(&io.input, io.output.as_deref()),
        Command::Cover(io) => cmd_cover(&io.input, io.output.as_deref()),
        Command::Match(io) => cmd_match(&io.input, io.output.as_deref()),
        Command::Cavity { io, validate } => cmd_cavity(&io.input, io.output.as_deref(), validate),
        Command::Verify { io, result, oracle, validate } => {
            cmd_verify(&io.input, &result, oracle, validate, io.output.as_deref())
        }
        Command::Gen { nodes, edges, maxweight, seed, output } => {
            cmd_gen(nodes.0, nodes.1, edges, maxweight, seed, output.as_deref())
        }
        Command::Bench { repeat, quick, output } => cmd_bench(repeat, quick, output.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(error.exit_code())
        }
    }
}
