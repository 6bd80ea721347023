//! Concrete syntaxes: N-Quads, N-Triples, Turtle and TriG (restricted to what
//! shape listings and dataset dumps need), plus the Turtle report format.
//!
//! Parsers are total: malformed input yields a [`SyntaxError`] carrying the
//! line and column of the offending token, never a panic.

mod cursor;
mod nquads;
mod report;
mod turtle;
mod write;

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::model::{Dataset, Graph};

pub use nquads::{parse_nquads, parse_nquads_with, parse_ntriples};
pub use report::{read_report, serialize_report, ReportReadError};
pub use turtle::{parse_trig, parse_trig_with, parse_turtle, parse_turtle_with};
pub use write::{write_nquads, write_ntriples, write_trig, write_turtle};

pub(crate) use cursor::Cursor;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub kind: SyntaxErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SyntaxErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("invalid IRI {0:?}")]
    InvalidIri(String),
    #[error("bad escape sequence {0}")]
    BadEscape(String),
    #[error("undefined prefix {0:?}")]
    UndefinedPrefix(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// How blank node labels from the document map to dataset terms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub enum BlankScope {
    /// Rewrite every label with a prefix unique to this parse, so two documents'
    /// `_:b0` stay distinct after loading into one dataset.
    #[default]
    Fresh,
    /// Keep labels verbatim (self-contained documents such as reports).
    Preserve,
}

impl BlankScope {
    pub(crate) fn prefix(&self) -> String {
        static DOCUMENTS: AtomicU64 = AtomicU64::new(0);
        match self {
            BlankScope::Fresh => format!("d{}_", DOCUMENTS.fetch_add(1, Ordering::Relaxed)),
            BlankScope::Preserve => String::new(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ParseOptions {
    pub base: Option<String>,
    pub blank_scope: BlankScope,
}

pub type PrefixMap = BTreeMap<String, String>;

#[derive(Debug, Clone)]
pub struct ParsedDataset {
    pub dataset: Dataset,
    pub prefixes: PrefixMap,
}

#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub prefixes: PrefixMap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RdfFormat {
    NQuads,
    NTriples,
    Turtle,
    TriG,
}

impl RdfFormat {
    /// Format from a file extension (`.nq`, `.nt`, `.ttl`, `.trig`).
    pub fn from_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "nq" | "nquads" => Some(RdfFormat::NQuads),
            "nt" => Some(RdfFormat::NTriples),
            "ttl" | "turtle" => Some(RdfFormat::Turtle),
            "trig" => Some(RdfFormat::TriG),
            _ => None,
        }
    }
}

/// Parses any supported format into a dataset; graph formats fill the default graph.
pub fn parse_dataset(text: &str, format: RdfFormat) -> Result<ParsedDataset, SyntaxError> {
    match format {
        RdfFormat::NQuads => parse_nquads(text),
        RdfFormat::TriG => parse_trig(text),
        RdfFormat::NTriples | RdfFormat::Turtle => {
            let parsed = if format == RdfFormat::Turtle { parse_turtle(text, None)? } else { parse_ntriples(text)? };
            let mut dataset = Dataset::new();
            *dataset.default_graph_mut() = parsed.graph;
            Ok(ParsedDataset { dataset, prefixes: parsed.prefixes })
        }
    }
}

/// Serializes a dataset in the given format; graph formats write only the default graph.
pub fn serialize_dataset(dataset: &Dataset, format: RdfFormat, prefixes: &PrefixMap) -> String {
    match format {
        RdfFormat::NQuads => write_nquads(dataset),
        RdfFormat::TriG => write_trig(dataset, prefixes),
        RdfFormat::NTriples => write_ntriples(dataset.default_graph()),
        RdfFormat::Turtle => write_turtle(dataset.default_graph(), prefixes),
    }
}
