//! File formats chosen by extension, and graph selectors.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use regex::Regex;
use shaclds::io::{parse_nquads, parse_ntriples, parse_trig, parse_turtle, read_report, serialize_report, write_nquads, write_trig, PrefixMap};
use shaclds::shacl::ValidationReport;
use shaclds::{Dataset, Graph, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    TriG,
    NQuads,
    Turtle,
    NTriples,
}

impl Format {
    pub fn of(path: &Path) -> Result<Format> {
        match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
            Some("trig") => Ok(Format::TriG),
            Some("nq") => Ok(Format::NQuads),
            Some("ttl") => Ok(Format::Turtle),
            Some("nt") => Ok(Format::NTriples),
            _ => bail!("{}: unknown RDF format; use .trig, .nq, .ttl or .nt", path.display()),
        }
    }

    fn is_dataset(self) -> bool {
        matches!(self, Format::TriG | Format::NQuads)
    }
}

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// Any RDF file as a dataset; graph formats load into the default graph.
pub fn load_dataset(path: &Path) -> Result<Dataset> {
    let format = Format::of(path)?;
    let text = read(path)?;
    let parsed = match format {
        Format::TriG => parse_trig(&text).map(|p| p.dataset),
        Format::NQuads => parse_nquads(&text).map(|p| p.dataset),
        Format::Turtle => parse_turtle(&text, None).map(|p| single(p.graph)),
        Format::NTriples => parse_ntriples(&text).map(|p| single(p.graph)),
    };
    parsed.with_context(|| format!("{}", path.display()))
}

fn single(graph: Graph) -> Dataset {
    let mut d = Dataset::new();
    *d.default_graph_mut() = graph;
    d
}

/// A Turtle or N-Triples file as one graph.
pub fn load_graph(path: &Path) -> Result<Graph> {
    let format = Format::of(path)?;
    if format.is_dataset() {
        bail!("{}: expected a single graph (.ttl or .nt)", path.display());
    }
    Ok(load_dataset(path)?.default_graph().clone())
}

pub fn write_dataset(path: &Path, dataset: &Dataset, prefixes: &PrefixMap) -> Result<()> {
    let text = match Format::of(path)? {
        Format::NQuads => write_nquads(dataset),
        Format::TriG => write_trig(dataset, prefixes),
        _ => bail!("{}: datasets are written as .trig or .nq", path.display()),
    };
    write(path, &text)
}

pub fn load_report(path: &Path) -> Result<ValidationReport> {
    read_report(&read(path)?).with_context(|| format!("{}", path.display()))
}

pub fn write_report(path: &Path, report: &ValidationReport) -> Result<()> {
    write(path, &serialize_report(report))
}

/// One `--graphs` value: a graph IRI, `re:<regex>`, or `all`.
#[derive(Debug, Clone)]
pub enum Selector {
    All,
    Iri(Term),
    Pattern(Regex),
}

impl Selector {
    pub fn parse(text: &str) -> Result<Selector> {
        if text == "all" {
            return Ok(Selector::All);
        }
        if let Some(re) = text.strip_prefix("re:") {
            return Ok(Selector::Pattern(Regex::new(re).with_context(|| format!("invalid graph regex {re:?}"))?));
        }
        let iri = text.strip_prefix('<').and_then(|t| t.strip_suffix('>')).unwrap_or(text);
        Term::checked_iri(iri).map(Selector::Iri).with_context(|| format!("invalid graph selector {text:?}"))
    }
}

/// Named graphs chosen by `selectors`, in name order. `All` also selects the
/// default graph, reported as `None`.
pub fn select(data: &Dataset, selectors: &[Selector]) -> (Vec<Term>, bool) {
    let mut names = Vec::new();
    let mut default = false;
    for (name, _) in data.named_graphs() {
        let hit = selectors.iter().any(|s| match s {
            Selector::All => true,
            Selector::Iri(t) => t == name,
            Selector::Pattern(re) => name.as_iri().is_some_and(|iri| re.is_match(iri)),
        });
        if hit {
            names.push(name.clone());
        }
    }
    for s in selectors {
        match s {
            Selector::All => default = true,
            Selector::Iri(t) if t.is(shaclds::vocab::shds::DEFAULT) => default = true,
            _ => {}
        }
    }
    (names, default)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors() {
        let mut d = Dataset::new();
        for n in ["http://x/graph/rinf/AB12", "http://x/graph/ontology", "http://x/other"] {
            let mut g = Graph::new();
            g.add(Term::iri("http://x/s"), Term::iri("http://x/p"), Term::iri(n));
            d.insert_graph(Term::iri(n), g);
        }
        let sel = |texts: &[&str]| {
            let s: Vec<Selector> = texts.iter().map(|t| Selector::parse(t).unwrap()).collect();
            select(&d, &s)
        };
        assert_eq!(sel(&["re:/rinf/"]).0, vec![Term::iri("http://x/graph/rinf/AB12")]);
        assert_eq!(sel(&["<http://x/other>", "re:ontology$"]).0.len(), 2);
        assert_eq!(sel(&["all"]), (d.graph_names().cloned().collect(), true));
        assert!(Selector::parse("re:(").is_err());
        assert!(Selector::parse("not an iri").is_err());
    }

    #[test]
    fn formats_by_extension() {
        assert_eq!(Format::of(Path::new("a/b.TriG")).unwrap(), Format::TriG);
        assert_eq!(Format::of(Path::new("x.nq")).unwrap(), Format::NQuads);
        assert!(Format::of(Path::new("x.json")).is_err());
    }
}
