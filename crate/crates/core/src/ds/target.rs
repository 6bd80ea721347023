use std::borrow::Cow;
use std::fmt;

use regex::Regex;
use sha2::{Digest, Sha256};

use crate::model::{Dataset, Graph, Term};
use crate::vocab::shds;

/// Prefix of the IRIs that identify materialized combination graphs.
pub const COMBINATION_IRI_PREFIX: &str = "urn:shaclds:combination:";

/// Which graphs of the data dataset a shapes graph applies to.
#[derive(Debug, Clone)]
pub enum TargetSpec {
    /// One graph by name; `shds:default` is the default graph.
    Graph(Term),
    /// Every named graph whose IRI matches the regular expression (unanchored search).
    Pattern(GraphPattern),
    /// A single graph computed from other graphs.
    Combination(CombinationTree),
}

#[derive(Debug, Clone)]
pub struct GraphPattern {
    pub source: String,
    pub regex: Regex,
}

impl GraphPattern {
    pub fn new(source: &str) -> Result<Self, regex::Error> {
        Ok(GraphPattern { source: source.to_owned(), regex: Regex::new(source)? })
    }

    pub fn matches(&self, iri: &str) -> bool {
        self.regex.is_match(iri)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CombinationOp {
    Or,
    And,
    Minus,
}

impl fmt::Display for CombinationOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CombinationOp::Or => "or",
            CombinationOp::And => "and",
            CombinationOp::Minus => "minus",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Operand {
    Graph(Term),
    /// `shds:all`: every named graph plus the default graph.
    All,
    Tree(CombinationTree),
}

/// `or` is union, `and` intersection, and `minus` removes the union of the
/// remaining operands from the first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CombinationTree {
    pub op: CombinationOp,
    pub operands: Vec<Operand>,
}

impl CombinationTree {
    pub fn new(op: CombinationOp, operands: Vec<Operand>) -> Self {
        CombinationTree { op, operands }
    }

    /// Canonical text: `or` and `and` operands are sorted and deduplicated;
    /// `minus` keeps its first operand and sorts and deduplicates the rest.
    pub fn canonical(&self) -> String {
        let mut parts: Vec<String> = self
            .operands
            .iter()
            .map(|o| match o {
                Operand::Graph(t) => t.to_string(),
                Operand::All => "all".to_owned(),
                Operand::Tree(t) => t.canonical(),
            })
            .collect();
        let from = usize::from(self.op == CombinationOp::Minus).min(parts.len());
        let mut tail = parts.split_off(from);
        tail.sort();
        tail.dedup();
        parts.extend(tail);
        format!("{}({})", self.op, parts.join(","))
    }

    /// Deterministic focus-graph identifier: a URN over the SHA-256 of [`Self::canonical`].
    pub fn skolem_id(&self) -> Term {
        let digest = Sha256::digest(self.canonical().as_bytes());
        Term::iri(&format!("{COMBINATION_IRI_PREFIX}{}", hex::encode(digest)))
    }

    /// Computes the combined graph over `data`. Unknown graph names are empty.
    pub fn materialize(&self, data: &Dataset) -> Graph {
        let mut parts = self.operands.iter().map(|o| materialize_operand(o, data));
        let Some(first) = parts.next() else { return Graph::new() };
        match self.op {
            CombinationOp::Or => {
                let mut out = first.into_owned();
                for p in parts {
                    out.extend_from(&p);
                }
                out
            }
            CombinationOp::And => parts.fold(first.into_owned(), |acc, p| acc.intersection(&p)),
            CombinationOp::Minus => {
                let mut out = first.into_owned();
                for p in parts {
                    for t in p.iter() {
                        out.remove(t);
                    }
                }
                out
            }
        }
    }
}

fn materialize_operand<'a>(o: &Operand, data: &'a Dataset) -> Cow<'a, Graph> {
    match o {
        Operand::Graph(name) => Cow::Borrowed(named_or_default(data, name)),
        Operand::All => Cow::Owned(flatten(data)),
        Operand::Tree(t) => Cow::Owned(t.materialize(data)),
    }
}

pub(crate) fn named_or_default<'a>(data: &'a Dataset, name: &Term) -> &'a Graph {
    if name.is(shds::DEFAULT) {
        data.default_graph()
    } else {
        data.graph(Some(name))
    }
}

/// Union of the default graph and every named graph.
pub fn flatten(data: &Dataset) -> Graph {
    let mut out = data.default_graph().clone();
    for (_, g) in data.named_graphs() {
        out.extend_from(g);
    }
    out
}

/// Union of the listed graphs (`shds:default` names the default graph).
pub fn merge_graphs<'t>(data: &Dataset, names: impl IntoIterator<Item = &'t Term>) -> Graph {
    let mut out = Graph::new();
    for n in names {
        out.extend_from(named_or_default(data, n));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(name: &str) -> Operand {
        Operand::Graph(Term::iri(&format!("http://g/{name}")))
    }

    #[test]
    fn skolem_ids_ignore_or_and_operand_order() {
        let a = CombinationTree::new(CombinationOp::Or, vec![g("a"), g("b"), g("a")]);
        let b = CombinationTree::new(CombinationOp::Or, vec![g("b"), g("a")]);
        assert_eq!(a.skolem_id(), b.skolem_id());
        let m1 = CombinationTree::new(CombinationOp::Minus, vec![g("a"), g("b")]);
        let m2 = CombinationTree::new(CombinationOp::Minus, vec![g("b"), g("a")]);
        assert_ne!(m1.skolem_id(), m2.skolem_id());
        assert!(a.skolem_id().as_iri().unwrap().starts_with(COMBINATION_IRI_PREFIX));
    }

    #[test]
    fn pattern_matching_is_a_search() {
        let p = GraphPattern::new(".*/rinf/[A-Z0-9]{4}$").unwrap();
        assert!(p.matches("http://data.europa.eu/949/graph/rinf/AB12"));
        assert!(!p.matches("http://data.europa.eu/949/graph/rinf/AB123"));
        assert!(!p.matches("http://data.europa.eu/949/graph/rinf/ontology"));
    }
}
