//! SHACL Core validation over a single data graph, plus SPARQL-based
//! constraints evaluated against an [`EvaluationDataset`](crate::ds::EvaluationDataset).
//!
//! Supported components: `sh:datatype`, `sh:pattern`/`sh:flags`,
//! `sh:minCount`, `sh:maxCount`, `sh:class`, `sh:nodeKind`, `sh:in`, `sh:or`,
//! `sh:not`, `sh:node`, `sh:property` and `sh:sparql`. Paths are a predicate
//! or `sh:inversePath` of a predicate.

mod shapes;
mod validate;

use std::fmt;

use crate::model::Term;

pub use shapes::{
    load_shapes, Constraint, NodeKind, PatternConstraint, Shape, ShapeDiagnostic, ShapeError, ShapeId, ShapesGraph,
    SparqlConstraint, Target,
};
pub(crate) use shapes::read_list;
pub use validate::{check_class, resolve_targets, validate_graph};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropertyPath {
    Predicate(Term),
    Inverse(Term),
}

impl PropertyPath {
    pub fn predicate(&self) -> &Term {
        match self {
            PropertyPath::Predicate(p) | PropertyPath::Inverse(p) => p,
        }
    }
}

impl fmt::Display for PropertyPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropertyPath::Predicate(p) => write!(f, "{p}"),
            PropertyPath::Inverse(p) => write!(f, "^{p}"),
        }
    }
}

/// One validation result. Field order is the normalized report order:
/// shapes graph, focus graph, then source shape, focus node, path, value and
/// the remaining fields.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValidationResult {
    /// Shapes graph that produced the result (dataset validation only).
    pub source_shapes_graph: Option<Term>,
    /// Focus graph the result was produced in (dataset validation only).
    pub focus_graph: Option<Term>,
    pub source_shape: Term,
    pub focus_node: Term,
    pub path: Option<PropertyPath>,
    pub value: Option<Term>,
    pub source_constraint_component: Term,
    pub severity: Term,
    pub message: Option<Term>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub results: Vec<ValidationResult>,
}

impl ValidationReport {
    pub fn new(mut results: Vec<ValidationResult>) -> Self {
        results.sort();
        ValidationReport { results }
    }

    /// True when no result has severity `sh:Violation`.
    pub fn conforms(&self) -> bool {
        !self.results.iter().any(|r| r.severity.is(crate::vocab::sh::VIOLATION))
    }

    pub fn len(&self) -> usize {
        self.results.len()
    }

    pub fn is_empty(&self) -> bool {
        self.results.is_empty()
    }

    /// Sorts results into the normalized order.
    pub fn normalize(&mut self) {
        self.results.sort();
    }
}
