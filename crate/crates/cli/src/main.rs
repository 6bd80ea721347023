//! `shaclds`: validate RDF datasets with SHACL-DS shapes datasets, post-process
//! reports, generate synthetic datasets and run the strategy benchmark.
//!
//! Exit status: 0 when the data conforms (or the command succeeded), 1 when
//! violations were found or two reports differ, 2 on any usage, parse or
//! engine error. A one-line summary goes to standard output; everything meant
//! for people goes to standard error.

mod commands;
mod formats;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "shaclds", version, about = "SHACL validation over RDF datasets with graph targeting")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Shapes dataset (TriG) with graph-targeting declarations.
    Ds,
    /// One shapes graph over the selected graphs merged into one.
    Flat,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a dataset and write the report as Turtle.
    Validate {
        /// Data file: .trig, .nq, .ttl or .nt.
        #[arg(long)]
        data: PathBuf,
        /// Shapes file: a TriG shapes dataset in ds mode, Turtle in flat mode.
        #[arg(long)]
        shapes: PathBuf,
        #[arg(long, value_enum, default_value = "ds")]
        mode: Mode,
        /// Graph selection, repeatable: a graph IRI, `re:<regex>`, or `all`.
        /// Flat mode merges the selection (default: all graphs); ds mode
        /// restricts the data to it (default: no restriction).
        #[arg(long = "graphs", value_name = "SELECTOR")]
        graphs: Vec<String>,
        /// Report file; omitted means no report is written.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Remove results identical in all standard fields before writing.
        #[arg(long)]
        dedup: bool,
        /// Number of shapes-graph/focus-graph pairs validated concurrently.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        parallel: u16,
    },
    /// Post-process validation reports.
    Report {
        #[command(subcommand)]
        command: ReportCommand,
    },
    /// Generate a dataset and run the benchmark configurations on it.
    Bench {
        /// TOML benchmark configuration.
        config: PathBuf,
        /// Directory for results.csv, summary.csv and summary.txt.
        out_dir: PathBuf,
    },
    /// Generate a synthetic multi-operator dataset and its ground truth.
    Generate {
        /// TOML generator configuration (top level or a [generator] table).
        config: PathBuf,
        /// Output file; `.nq` writes N-Quads, anything else TriG. The ground
        /// truth goes next to it as `<stem>.truth.csv`.
        output: PathBuf,
    },
    /// Evaluate a SELECT query and print tab-separated solutions.
    Query {
        #[arg(long)]
        data: PathBuf,
        /// File holding the query text.
        query: PathBuf,
        /// Graph used as the default graph; `shds:default` or omitted means
        /// the data's default graph.
        #[arg(long)]
        focus: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum ReportCommand {
    /// Collapse results identical in all standard fields.
    Dedup {
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Per-shape and per-focus-graph result counts.
    Counts {
        input: PathBuf,
        /// CSV file for the per-shape counts.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Shapes whose result counts differ between two reports; exits 1 if any do.
    Diff {
        a: PathBuf,
        b: PathBuf,
        /// CSV file for the differences.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Violations,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Violations) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
