//! In-memory RDF data model: terms, triples, indexed graphs and datasets.
//!
//! Graphs and datasets are built once (parsing, generation) and then shared
//! read-only, so everything here is `Send + Sync`.

mod dataset;
mod graph;
pub mod iso;
pub mod lexical;
mod term;

pub use dataset::{empty_graph, Dataset, Quad};
pub use graph::{Graph, Triple};
pub use term::{is_valid_iri, Literal, Term, TermKind};
pub(crate) use term::write_escaped;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("invalid IRI {0:?}")]
    InvalidIri(String),
    #[error("literal {0} cannot be a subject")]
    LiteralSubject(Term),
    #[error("predicate {0} is not an IRI")]
    NonIriPredicate(Term),
    #[error("graph name {0} is not an IRI")]
    NonIriGraphName(Term),
}
