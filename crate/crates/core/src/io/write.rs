//! Deterministic serializers: output depends only on the set of triples/quads.

use std::fmt::Write;

use crate::model::{write_escaped, Dataset, Graph, Term, Triple};
use crate::vocab::xsd;

use super::PrefixMap;

pub fn write_nquads(dataset: &Dataset) -> String {
    let mut out = String::new();
    for q in dataset.quads() {
        match &q.graph {
            Some(g) => writeln!(out, "{} {} {} {} .", q.subject, q.predicate, q.object, g),
            None => writeln!(out, "{} {} {} .", q.subject, q.predicate, q.object),
        }
        .unwrap();
    }
    out
}

pub fn write_ntriples(graph: &Graph) -> String {
    let mut out = String::new();
    for t in graph.sorted() {
        writeln!(out, "{} {} {} .", t.subject, t.predicate, t.object).unwrap();
    }
    out
}

pub fn write_turtle(graph: &Graph, prefixes: &PrefixMap) -> String {
    let fmt = TermFormatter::new(prefixes);
    let mut out = fmt.prefix_block();
    write_block(&mut out, &fmt, &graph.sorted(), "");
    out
}

/// TriG with the default graph at top level and one `GRAPH` block per named graph,
/// including empty ones.
pub fn write_trig(dataset: &Dataset, prefixes: &PrefixMap) -> String {
    let fmt = TermFormatter::new(prefixes);
    let mut out = fmt.prefix_block();
    write_block(&mut out, &fmt, &dataset.default_graph().sorted(), "");
    for (name, graph) in dataset.named_graphs() {
        if !out.is_empty() {
            out.push('\n');
        }
        writeln!(out, "GRAPH {} {{", fmt.term(name)).unwrap();
        write_block(&mut out, &fmt, &graph.sorted(), "  ");
        out.push_str("}\n");
    }
    out
}

fn write_block(out: &mut String, fmt: &TermFormatter<'_>, triples: &[&Triple], indent: &str) {
    let mut i = 0;
    while i < triples.len() {
        let subject = &triples[i].subject;
        write!(out, "{indent}{}", fmt.term(subject)).unwrap();
        let mut first_pred = true;
        while i < triples.len() && &triples[i].subject == subject {
            let predicate = &triples[i].predicate;
            if first_pred {
                out.push(' ');
            } else {
                write!(out, " ;\n{indent}    ").unwrap();
            }
            first_pred = false;
            write!(out, "{}", fmt.predicate(predicate)).unwrap();
            let mut first_obj = true;
            while i < triples.len() && &triples[i].subject == subject && &triples[i].predicate == predicate {
                out.push_str(if first_obj { " " } else { ", " });
                first_obj = false;
                out.push_str(&fmt.term(&triples[i].object));
                i += 1;
            }
        }
        out.push_str(" .\n");
    }
}

pub(crate) struct TermFormatter<'a> {
    prefixes: &'a PrefixMap,
    /// (namespace, prefix), longest namespace first.
    by_namespace: Vec<(&'a str, &'a str)>,
}

impl<'a> TermFormatter<'a> {
    pub fn new(prefixes: &'a PrefixMap) -> Self {
        let mut by_namespace: Vec<(&str, &str)> = prefixes.iter().map(|(p, ns)| (ns.as_str(), p.as_str())).collect();
        by_namespace.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.1.cmp(b.1)));
        TermFormatter { prefixes, by_namespace }
    }

    pub fn prefix_block(&self) -> String {
        let mut out = String::new();
        for (p, ns) in self.prefixes {
            writeln!(out, "@prefix {p}: <{ns}> .").unwrap();
        }
        if !out.is_empty() {
            out.push('\n');
        }
        out
    }

    pub fn iri(&self, iri: &str) -> String {
        for (ns, prefix) in &self.by_namespace {
            if let Some(local) = iri.strip_prefix(ns) {
                if is_safe_local(local) {
                    return format!("{prefix}:{local}");
                }
            }
        }
        format!("<{iri}>")
    }

    pub fn predicate(&self, t: &Term) -> String {
        if t.is(crate::vocab::rdf::TYPE) {
            "a".to_owned()
        } else {
            self.term(t)
        }
    }

    pub fn term(&self, t: &Term) -> String {
        match t {
            Term::Iri(v) => self.iri(v),
            Term::Blank(_) => t.to_string(),
            Term::Literal(l) => {
                let mut out = String::from("\"");
                write_escaped(&mut out, l.lexical()).unwrap();
                out.push('"');
                if let Some(lang) = l.language() {
                    write!(out, "@{lang}").unwrap();
                } else if l.datatype() != xsd::STRING {
                    write!(out, "^^{}", self.iri(l.datatype())).unwrap();
                }
                out
            }
        }
    }
}

fn is_safe_local(local: &str) -> bool {
    !local.is_empty()
        && local.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        && !local.starts_with('-')
}
