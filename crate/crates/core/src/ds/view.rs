use std::borrow::Cow;

use crate::model::{empty_graph, Dataset, Graph, Term};
use crate::vocab::shds;

/// What a SPARQL constraint sees while validating one focus graph: the focus
/// graph as default graph, and every named graph of the source dataset, with
/// the source default graph exposed as `shds:default`.
#[derive(Debug, Clone)]
pub struct EvaluationDataset<'a> {
    focus: Cow<'a, Graph>,
    source: Option<&'a Dataset>,
}

impl<'a> EvaluationDataset<'a> {
    /// A view with `graph` as default graph and no named graphs.
    pub fn single(graph: &'a Graph) -> Self {
        EvaluationDataset { focus: Cow::Borrowed(graph), source: None }
    }

    pub fn new(source: &'a Dataset, focus: Cow<'a, Graph>) -> Self {
        EvaluationDataset { focus, source: Some(source) }
    }

    pub fn default_graph(&self) -> &Graph {
        &self.focus
    }

    pub fn named_graph(&self, name: &Term) -> Option<&Graph> {
        let source = self.source?;
        if name.is(shds::DEFAULT) {
            Some(source.default_graph())
        } else {
            source.named_graph(name)
        }
    }

    /// The named graph `name`, or an empty graph when there is none.
    pub fn graph(&self, name: &Term) -> &Graph {
        self.named_graph(name).unwrap_or_else(|| empty_graph())
    }

    /// Named graph names in term order, followed by `shds:default`.
    pub fn graph_names(&self) -> Vec<Term> {
        match self.source {
            None => Vec::new(),
            Some(source) => {
                let default = Term::iri(shds::DEFAULT);
                let mut names: Vec<Term> = source.graph_names().filter(|n| **n != default).cloned().collect();
                names.push(default);
                names
            }
        }
    }

    /// Triples across the default graph and all named graphs.
    pub fn triple_count(&self) -> usize {
        self.focus.len() + self.graph_names().iter().map(|n| self.graph(n).len()).sum::<usize>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Quad;

    #[test]
    fn default_graph_is_exposed_under_shds_default() {
        let mut d = Dataset::new();
        let (s, p) = (Term::iri("http://x/s"), Term::iri("http://x/p"));
        d.insert(Quad { subject: s.clone(), predicate: p.clone(), object: Term::integer(1), graph: None });
        d.insert(Quad { subject: s.clone(), predicate: p.clone(), object: Term::integer(2), graph: Some(Term::iri("http://x/g")) });
        let focus = Graph::new();
        let eds = EvaluationDataset::new(&d, Cow::Borrowed(&focus));
        assert!(eds.default_graph().is_empty());
        assert_eq!(eds.graph(&Term::iri(shds::DEFAULT)).len(), 1);
        assert_eq!(eds.graph_names(), vec![Term::iri("http://x/g"), Term::iri(shds::DEFAULT)]);
        assert!(eds.graph(&Term::iri("http://x/missing")).is_empty());
        assert_eq!(eds.triple_count(), 2);
        assert!(EvaluationDataset::single(&focus).graph_names().is_empty());
    }
}
