use std::collections::BTreeMap;
use std::sync::LazyLock;

use super::{Graph, ModelError, Term, Triple};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Quad {
    pub subject: Term,
    pub predicate: Term,
    pub object: Term,
    /// `None` is the default graph.
    pub graph: Option<Term>,
}

impl Quad {
    pub fn new(triple: Triple, graph: Option<Term>) -> Self {
        Quad { subject: triple.subject, predicate: triple.predicate, object: triple.object, graph }
    }

    pub fn checked(subject: Term, predicate: Term, object: Term, graph: Option<Term>) -> Result<Self, ModelError> {
        let triple = Triple::checked(subject, predicate, object)?;
        if let Some(g) = &graph {
            if !g.is_iri() {
                return Err(ModelError::NonIriGraphName(g.clone()));
            }
        }
        Ok(Quad::new(triple, graph))
    }

    pub fn triple(&self) -> Triple {
        Triple::new(self.subject.clone(), self.predicate.clone(), self.object.clone())
    }
}

static EMPTY_GRAPH: LazyLock<Graph> = LazyLock::new(Graph::new);

/// The shared empty graph returned for unknown graph names.
pub fn empty_graph() -> &'static Graph {
    &EMPTY_GRAPH
}

/// A default graph plus named graphs keyed by IRI.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Dataset {
    default: Graph,
    named: BTreeMap<Term, Graph>,
}

impl Dataset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn default_graph(&self) -> &Graph {
        &self.default
    }

    pub fn default_graph_mut(&mut self) -> &mut Graph {
        &mut self.default
    }

    pub fn named_graph(&self, name: &Term) -> Option<&Graph> {
        self.named.get(name)
    }

    /// The named graph `name`, the default graph for `None`, or an empty graph for unknown names.
    pub fn graph(&self, name: Option<&Term>) -> &Graph {
        match name {
            None => &self.default,
            Some(n) => self.named.get(n).unwrap_or_else(|| empty_graph()),
        }
    }

    /// Mutable access, creating the named graph when absent.
    pub fn graph_mut(&mut self, name: Option<&Term>) -> &mut Graph {
        match name {
            None => &mut self.default,
            Some(n) => self.named.entry(n.clone()).or_default(),
        }
    }

    pub fn insert_graph(&mut self, name: Term, graph: Graph) -> Option<Graph> {
        self.named.insert(name, graph)
    }

    pub fn insert(&mut self, quad: Quad) -> bool {
        let Quad { subject, predicate, object, graph } = quad;
        self.graph_mut(graph.as_ref()).insert(Triple::new(subject, predicate, object))
    }

    pub fn graph_names(&self) -> impl Iterator<Item = &Term> + '_ {
        self.named.keys()
    }

    pub fn named_graphs(&self) -> impl Iterator<Item = (&Term, &Graph)> + '_ {
        self.named.iter()
    }

    /// Total number of quads.
    pub fn len(&self) -> usize {
        self.default.len() + self.named.values().map(Graph::len).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Quads in a stable order: default graph first, then named graphs by name.
    pub fn quads(&self) -> impl Iterator<Item = Quad> + '_ {
        let default = self.default.sorted().into_iter().map(|t| Quad::new(t.clone(), None));
        let named = self.named.iter().flat_map(|(name, g)| {
            g.sorted().into_iter().map(move |t| Quad::new(t.clone(), Some(name.clone())))
        });
        default.chain(named)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_lookup() {
        let g1 = Term::iri("http://x/g1");
        let mut d = Dataset::new();
        d.insert(Quad::new(
            Triple::new(Term::iri("http://x/s"), Term::iri("http://x/p"), Term::integer(1)),
            Some(g1.clone()),
        ));
        d.insert(Quad::new(
            Triple::new(Term::iri("http://x/s"), Term::iri("http://x/p"), Term::integer(2)),
            None,
        ));
        assert_eq!(d.graph(None).len(), 1);
        assert_eq!(d.graph(Some(&g1)).len(), 1);
        assert!(d.graph(Some(&Term::iri("http://x/unknown"))).is_empty());
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn graph_names_must_be_iris() {
        let err = Quad::checked(
            Term::iri("http://x/s"),
            Term::iri("http://x/p"),
            Term::integer(1),
            Some(Term::blank("g")),
        );
        assert!(err.is_err());
    }
}
