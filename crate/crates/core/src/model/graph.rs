use rustc_hash::{FxHashMap, FxHashSet};

use super::{ModelError, Term};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Triple {
    pub subject: Term,
    pub predicate: Term,
    pub object: Term,
}

impl Triple {
    /// Builds a triple without checking term kinds (see [`Triple::checked`]).
    pub fn new(subject: Term, predicate: Term, object: Term) -> Self {
        debug_assert!(!subject.is_literal() && predicate.is_iri());
        Triple { subject, predicate, object }
    }

    pub fn checked(subject: Term, predicate: Term, object: Term) -> Result<Self, ModelError> {
        if subject.is_literal() {
            return Err(ModelError::LiteralSubject(subject));
        }
        if !predicate.is_iri() {
            return Err(ModelError::NonIriPredicate(predicate));
        }
        Ok(Triple { subject, predicate, object })
    }
}

type TripleSet = FxHashSet<Triple>;

/// A set of triples with single-key lookup indexes on subject, predicate and object.
#[derive(Clone, Default)]
pub struct Graph {
    triples: TripleSet,
    by_subject: FxHashMap<Term, TripleSet>,
    by_predicate: FxHashMap<Term, TripleSet>,
    by_object: FxHashMap<Term, TripleSet>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    /// Returns false when the triple was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        if self.triples.contains(&triple) {
            return false;
        }
        self.by_subject.entry(triple.subject.clone()).or_default().insert(triple.clone());
        self.by_predicate.entry(triple.predicate.clone()).or_default().insert(triple.clone());
        self.by_object.entry(triple.object.clone()).or_default().insert(triple.clone());
        self.triples.insert(triple);
        true
    }

    pub fn add(&mut self, subject: Term, predicate: Term, object: Term) -> bool {
        self.insert(Triple::new(subject, predicate, object))
    }

    pub fn remove(&mut self, triple: &Triple) -> bool {
        if !self.triples.remove(triple) {
            return false;
        }
        for (index, key) in [
            (&mut self.by_subject, &triple.subject),
            (&mut self.by_predicate, &triple.predicate),
            (&mut self.by_object, &triple.object),
        ] {
            if let Some(set) = index.get_mut(key) {
                set.remove(triple);
                if set.is_empty() {
                    index.remove(key);
                }
            }
        }
        true
    }

    /// Iterates in unspecified order; use [`Graph::sorted`] for a stable one.
    pub fn iter(&self) -> impl Iterator<Item = &Triple> + '_ {
        self.triples.iter()
    }

    pub fn sorted(&self) -> Vec<&Triple> {
        let mut v: Vec<&Triple> = self.triples.iter().collect();
        v.sort_unstable();
        v
    }

    /// All triples matching the bound positions; `None` is a wildcard.
    pub fn matching<'a, 'k>(
        &'a self,
        subject: Option<&'k Term>,
        predicate: Option<&'k Term>,
        object: Option<&'k Term>,
    ) -> impl Iterator<Item = &'a Triple> + use<'a, 'k> {
        let candidates = self.candidates(subject, predicate, object);
        candidates.into_iter().flat_map(|s| s.iter()).filter(move |t| {
            subject.is_none_or(|s| &t.subject == s)
                && predicate.is_none_or(|p| &t.predicate == p)
                && object.is_none_or(|o| &t.object == o)
        })
    }

    /// Smallest index bucket covering the pattern, or `None` when a bound key is absent.
    fn candidates<'a>(
        &'a self,
        subject: Option<&Term>,
        predicate: Option<&Term>,
        object: Option<&Term>,
    ) -> Option<&'a TripleSet> {
        let mut best: Option<&TripleSet> = None;
        for (index, key) in [
            (&self.by_subject, subject),
            (&self.by_predicate, predicate),
            (&self.by_object, object),
        ] {
            if let Some(key) = key {
                let bucket = index.get(key)?;
                if best.is_none_or(|b| bucket.len() < b.len()) {
                    best = Some(bucket);
                }
            }
        }
        Some(best.unwrap_or(&self.triples))
    }

    pub fn objects<'a, 'k>(&'a self, subject: &'k Term, predicate: &'k Term) -> impl Iterator<Item = &'a Term> + use<'a, 'k> {
        self.matching(Some(subject), Some(predicate), None).map(|t| &t.object)
    }

    pub fn subjects<'a, 'k>(&'a self, predicate: &'k Term, object: &'k Term) -> impl Iterator<Item = &'a Term> + use<'a, 'k> {
        self.matching(None, Some(predicate), Some(object)).map(|t| &t.subject)
    }

    pub fn object(&self, subject: &Term, predicate: &Term) -> Option<&Term> {
        self.matching(Some(subject), Some(predicate), None).map(|t| &t.object).next()
    }

    pub fn has_subject(&self, subject: &Term) -> bool {
        self.by_subject.contains_key(subject)
    }

    /// Every distinct term in subject, predicate or object position.
    pub fn terms(&self) -> FxHashSet<&Term> {
        let mut out = FxHashSet::default();
        out.extend(self.by_subject.keys());
        out.extend(self.by_predicate.keys());
        out.extend(self.by_object.keys());
        out
    }

    pub fn extend_from(&mut self, other: &Graph) {
        for t in other.iter() {
            self.insert(t.clone());
        }
    }

    pub fn union(&self, other: &Graph) -> Graph {
        let (big, small) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        let mut out = big.clone();
        out.extend_from(small);
        out
    }

    pub fn intersection(&self, other: &Graph) -> Graph {
        let (big, small) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        small.iter().filter(|t| big.contains(t)).cloned().collect()
    }

    pub fn difference(&self, other: &Graph) -> Graph {
        self.iter().filter(|t| !other.contains(t)).cloned().collect()
    }

    pub fn is_subset(&self, other: &Graph) -> bool {
        self.len() <= other.len() && self.iter().all(|t| other.contains(t))
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.triples == other.triples
    }
}

impl Eq for Graph {}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.sorted()).finish()
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut g = Graph::new();
        for t in iter {
            g.insert(t);
        }
        g
    }
}

impl Extend<Triple> for Graph {
    fn extend<I: IntoIterator<Item = Triple>>(&mut self, iter: I) {
        for t in iter {
            self.insert(t);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(s: u8, p: u8, o: u8) -> Triple {
        Triple::new(
            Term::iri(&format!("http://x/s{s}")),
            Term::iri(&format!("http://x/p{p}")),
            if o.is_multiple_of(3) { Term::integer(o as i64) } else { Term::iri(&format!("http://x/o{o}")) },
        )
    }

    fn g(ts: &[Triple]) -> Graph {
        ts.iter().cloned().collect()
    }

    #[test]
    fn set_semantics() {
        let mut graph = Graph::new();
        assert!(graph.insert(t(1, 1, 1)));
        assert!(!graph.insert(t(1, 1, 1)));
        assert_eq!(graph.len(), 1);
    }

    #[test]
    fn set_operations_small_cases() {
        let (t1, t2, t3) = (t(1, 1, 1), t(2, 2, 2), t(3, 3, 3));
        assert_eq!(g(std::slice::from_ref(&t1)).union(&g(&[t1.clone(), t2.clone()])), g(&[t1.clone(), t2.clone()]));
        assert!(Graph::new().union(&Graph::new()).is_empty());
        assert_eq!(
            g(&[t1.clone(), t2.clone()]).intersection(&g(&[t2.clone(), t3.clone()])),
            g(std::slice::from_ref(&t2))
        );
        let a = g(&[t1.clone(), t2.clone()]);
        assert_eq!(a.intersection(&a), a);
        assert_eq!(a.difference(&g(std::slice::from_ref(&t2))), g(std::slice::from_ref(&t1)));
        assert!(a.difference(&a).is_empty());
    }

    #[test]
    fn match_by_predicate() {
        let p = Term::iri("http://data.europa.eu/949/maxTrainCurrent");
        let mut graph = Graph::new();
        graph.add(Term::iri("http://x/cls"), p.clone(), Term::integer(1500));
        graph.add(Term::iri("http://x/cls"), Term::iri("http://x/other"), Term::integer(2));
        assert_eq!(graph.matching(None, Some(&p), None).count(), 1);
        assert_eq!(graph.matching(None, None, None).count(), 2);
        let missing = Term::iri("http://x/none");
        assert_eq!(graph.matching(Some(&missing), None, None).count(), 0);
    }

    fn triple_strategy() -> impl Strategy<Value = Triple> {
        (0u8..12, 0u8..4, 0u8..12).prop_map(|(s, p, o)| t(s, p, o))
    }

    fn graph_strategy() -> impl Strategy<Value = Graph> {
        prop::collection::vec(triple_strategy(), 0..60).prop_map(|v| v.into_iter().collect())
    }

    fn scan<'a>(g: &'a Graph, s: Option<&Term>, p: Option<&Term>, o: Option<&Term>) -> Vec<&'a Triple> {
        let mut v: Vec<&Triple> = g
            .iter()
            .filter(|t| {
                s.is_none_or(|s| &t.subject == s)
                    && p.is_none_or(|p| &t.predicate == p)
                    && o.is_none_or(|o| &t.object == o)
            })
            .collect();
        v.sort();
        v
    }

    proptest! {
        #[test]
        fn set_algebra_laws(a in graph_strategy(), b in graph_strategy()) {
            prop_assert_eq!(a.union(&b), b.union(&a));
            prop_assert_eq!(a.intersection(&b), b.intersection(&a));
            prop_assert!(a.difference(&b).is_subset(&a));
            prop_assert_eq!(a.union(&b).intersection(&a), a.clone());
            // Oracle: membership defined directly over the enumerated inputs.
            let all: Vec<&Triple> = a.iter().chain(b.iter()).collect();
            for t in all {
                prop_assert_eq!(a.union(&b).contains(t), a.contains(t) || b.contains(t));
                prop_assert_eq!(a.intersection(&b).contains(t), a.contains(t) && b.contains(t));
                prop_assert_eq!(a.difference(&b).contains(t), a.contains(t) && !b.contains(t));
            }
        }

        #[test]
        fn index_matches_scan_after_edits(
            ops in prop::collection::vec((any::<bool>(), triple_strategy()), 0..200),
            pats in prop::collection::vec((prop::option::of(0u8..12), prop::option::of(0u8..4), prop::option::of(0u8..12)), 1..20),
        ) {
            let mut g = Graph::new();
            for (insert, t) in ops {
                if insert { g.insert(t); } else { g.remove(&t); }
            }
            for (s, p, o) in pats {
                let s = s.map(|s| t(s, 0, 1).subject);
                let p = p.map(|p| t(0, p, 1).predicate);
                let o = o.map(|o| t(0, 0, o).object);
                let mut got: Vec<&Triple> = g.matching(s.as_ref(), p.as_ref(), o.as_ref()).collect();
                got.sort();
                prop_assert_eq!(got, scan(&g, s.as_ref(), p.as_ref(), o.as_ref()));
            }
        }
    }
}
