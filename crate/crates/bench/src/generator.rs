//! Seeded synthetic railway datasets with known violations.
//!
//! A generated dataset has one named graph per operator (company code of four
//! upper-case alphanumerics), the four reference graphs, and optionally the
//! duplicate-version ontology/SKOS graphs, a SHACL graph and a metadata graph.
//! Every injected violation is recorded in a [`GroundTruth`] for each way of
//! scoping validation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use shaclds::vocab::{rdf, rdfs, xsd, OWL, SH, SKOS};
use shaclds::{Dataset, Graph, Literal, Term};

use crate::era::{self, shapes};

#[derive(Debug, thiserror::Error)]
pub enum GeneratorError {
    #[error("invalid generator config: {0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// `era:maxTrainCurrent` outside the numeric pattern.
    Pattern,
    /// Two `era:maxTrainCurrent` values.
    MaxCount,
    /// `era:lengthOfSectionOfLine` as a plain string.
    Datatype,
    /// `era:etcsMVersion` concept outside its concept scheme.
    Skos,
    /// `era:notApplicable` naming a property the ontology does not declare.
    Class,
}

impl ViolationKind {
    pub const ALL: [ViolationKind; 5] =
        [ViolationKind::Pattern, ViolationKind::MaxCount, ViolationKind::Datatype, ViolationKind::Skos, ViolationKind::Class];

    /// The shape reporting this kind.
    pub fn shape(self) -> &'static str {
        match self {
            ViolationKind::Pattern | ViolationKind::MaxCount => shapes::MAX_TRAIN_CURRENT,
            ViolationKind::Datatype => shapes::LENGTH_OF_SECTION,
            ViolationKind::Skos => shapes::ETCS,
            ViolationKind::Class => shapes::NOT_APPLICABLE,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ViolationPlan {
    pub kind: ViolationKind,
    pub per_operator: usize,
}

/// Cross-operator scenarios, each placed in the first operator graphs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct DivergencePlan {
    /// A shared section of line whose start point only one of two operators declares.
    #[serde(default)]
    pub missing_reference: bool,
    /// A shared section of line with a different nature in each of two operators.
    #[serde(default)]
    pub conflicting_values: bool,
    /// An operator graph asserting SKOS membership for a concept outside the scheme.
    #[serde(default)]
    pub spoof: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct GeneratorConfig {
    pub seed: u64,
    pub operators: usize,
    pub triples_per_operator: usize,
    #[serde(default)]
    pub violations: Vec<ViolationPlan>,
    /// Violating entities copied into several operator graphs.
    #[serde(default)]
    pub shared_triple_count: usize,
    /// Number of operator graphs each shared entity is copied into.
    #[serde(default = "default_shared_copies")]
    pub shared_copies: usize,
    #[serde(default)]
    pub divergence: DivergencePlan,
    /// Adds the duplicate ontology/SKOS versions, a SHACL graph and a metadata graph.
    #[serde(default)]
    pub duplicate_versions: bool,
}

fn default_shared_copies() -> usize {
    2
}

impl GeneratorConfig {
    pub fn new(seed: u64, operators: usize, triples_per_operator: usize) -> Self {
        GeneratorConfig {
            seed,
            operators,
            triples_per_operator,
            violations: Vec::new(),
            shared_triple_count: 0,
            shared_copies: default_shared_copies(),
            divergence: DivergencePlan::default(),
            duplicate_versions: false,
        }
    }

    pub fn with_violation(mut self, kind: ViolationKind, per_operator: usize) -> Self {
        self.violations.push(ViolationPlan { kind, per_operator });
        self
    }

    pub fn validate(&self) -> Result<(), GeneratorError> {
        let invalid = |m: String| Err(GeneratorError::Invalid(m));
        if self.operators == 0 || self.triples_per_operator == 0 {
            return invalid("operators and triples-per-operator must be positive".into());
        }
        if let Some(v) = self.violations.iter().find(|v| v.per_operator == 0) {
            return invalid(format!("violation plan for {:?} has a zero count", v.kind));
        }
        if self.shared_triple_count > 0 && !(2..=self.operators).contains(&self.shared_copies) {
            return invalid(format!("shared-copies must be between 2 and the operator count, got {}", self.shared_copies));
        }
        let d = &self.divergence;
        if (d.missing_reference || d.conflicting_values) && self.operators < 2 {
            return invalid("divergence scenarios need at least two operators".into());
        }
        Ok(())
    }
}

/// Validation scopes the ground truth is recorded for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum View {
    /// Each operator graph alone, with the GRAPH-pinned shapes.
    Target,
    /// Each operator graph merged with the reference graphs.
    Combination,
    /// Operator graphs and reference graphs merged into one graph.
    Merged,
    /// Every graph of the dataset merged into one graph.
    Full,
    /// The ontology, SKOS and SHACL shapes graphs on their category graphs.
    Extra,
}

impl View {
    pub const ALL: [View; 5] = [View::Target, View::Combination, View::Merged, View::Full, View::Extra];
}

impl fmt::Display for View {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            View::Target => "target",
            View::Combination => "combination",
            View::Merged => "merged",
            View::Full => "full",
            View::Extra => "extra",
        })
    }
}

/// Expected result counts per view, shape and graph. Per-graph views key by
/// the operator or category graph; merged views have no graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroundTruth {
    counts: BTreeMap<(View, String, Option<String>), usize>,
}

impl GroundTruth {
    fn add(&mut self, view: View, shape: &str, graph: Option<&Term>, n: usize) {
        if n == 0 {
            return;
        }
        let graph = graph.map(|g| g.as_iri().expect("graph names are IRIs").to_owned());
        *self.counts.entry((view, shape.to_owned(), graph)).or_default() += n;
    }

    pub fn shape_counts(&self, view: View) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for ((v, shape, _), n) in &self.counts {
            if *v == view {
                *out.entry(shape.clone()).or_default() += n;
            }
        }
        out
    }

    pub fn graph_counts(&self, view: View) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for ((v, _, graph), n) in &self.counts {
            if let (true, Some(g)) = (*v == view, graph) {
                *out.entry(g.clone()).or_default() += n;
            }
        }
        out
    }

    /// Counts keyed by shape and graph for one view.
    pub fn entries(&self, view: View) -> BTreeMap<(String, Option<String>), usize> {
        self.counts.iter().filter(|((v, _, _), _)| *v == view).map(|((_, s, g), n)| ((s.clone(), g.clone()), *n)).collect()
    }

    pub fn count(&self, view: View, shape: &str) -> usize {
        self.shape_counts(view).get(shape).copied().unwrap_or(0)
    }

    pub fn total(&self, view: View) -> usize {
        self.counts.iter().filter(|((v, _, _), _)| *v == view).map(|(_, n)| n).sum()
    }

    /// `view,shape,graph,count` rows; the graph column is empty for merged views.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("view,shape,graph,count\n");
        for ((view, shape, graph), n) in &self.counts {
            out.push_str(&format!("{view},{shape},{},{n}\n", graph.as_deref().unwrap_or("")));
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub dataset: Dataset,
    pub truth: GroundTruth,
    /// Operator graph names in generation order.
    pub operators: Vec<Term>,
}

pub fn generate(config: &GeneratorConfig) -> Result<Generated, GeneratorError> {
    config.validate()?;
    let mut g = Gen {
        rng: ChaCha8Rng::seed_from_u64(config.seed),
        truth: GroundTruth::default(),
        etcs: BTreeSet::new(),
        graphs: Vec::new(),
    };
    let codes = g.operator_codes(config.operators);
    let operators: Vec<Term> = codes.iter().map(|c| era::operator_graph(c)).collect();

    for (code, name) in codes.iter().zip(&operators) {
        let mut graph = Graph::new();
        for plan in &config.violations {
            for i in 0..plan.per_operator {
                let id = data(code, &format!("{}-v{i}", kind_slug(plan.kind)));
                g.violating_entity(&mut graph, plan.kind, &id);
                g.record_per_operator(plan.kind.shape(), std::slice::from_ref(name));
                g.truth.add(View::Merged, plan.kind.shape(), None, 1);
            }
        }
        let mut block = 0;
        while graph.len() < config.triples_per_operator {
            g.filler(&mut graph, code, block);
            block += 1;
        }
        g.graphs.push((name.clone(), graph));
    }

    for j in 0..config.shared_triple_count {
        let kind = [ViolationKind::Pattern, ViolationKind::Datatype, ViolationKind::Skos, ViolationKind::Class][j % 4];
        let id = data("shared", &format!("{}{j}", kind_slug(kind)));
        let mut entity = Graph::new();
        g.violating_entity(&mut entity, kind, &id);
        let targets: Vec<usize> = (0..config.shared_copies).map(|t| (j + t) % config.operators).collect();
        for &t in &targets {
            g.graphs[t].1.extend_from(&entity);
        }
        let names: Vec<Term> = targets.iter().map(|&t| operators[t].clone()).collect();
        g.record_per_operator(kind.shape(), &names);
        g.truth.add(View::Merged, kind.shape(), None, 1);
    }

    if config.divergence.missing_reference {
        // Operator 0 declares the start point; operator 1 does not.
        let id = data("shared", "sol-missing-ref");
        let nature = concept("sol-natures/rinf/10");
        let start = data(&codes[0], "op-border");
        let mut with = Graph::new();
        section(&mut with, &id, "4.250", Some(&start), std::slice::from_ref(&nature));
        let mut without = Graph::new();
        section(&mut without, &id, "4.250", None, &[nature]);
        g.graphs[0].1.extend_from(&with);
        g.graphs[1].1.extend_from(&without);
        g.record_per_operator(shapes::SOL_OP_START, &[operators[1].clone()]);
    }

    if config.divergence.conflicting_values {
        let id = data("shared", "sol-conflict");
        let start = data(&codes[0], "op-border");
        let mut a = Graph::new();
        section(&mut a, &id, "7.100", Some(&start), &[concept("sol-natures/rinf/10")]);
        let mut b = Graph::new();
        section(&mut b, &id, "7.100", Some(&start), &[concept("sol-natures/rinf/20")]);
        g.graphs[0].1.extend_from(&a);
        g.graphs[1].1.extend_from(&b);
        g.truth.add(View::Merged, shapes::SOL_NATURE, None, 1);
    }

    if config.divergence.spoof {
        // The concept is outside the scheme, but the operator graph claims it is in.
        let id = data(&codes[0], "etcs-spoof");
        let spoofed = concept("etcs-m-versions/rinf/spoof");
        let graph = &mut g.graphs[0].1;
        graph.add(id.clone(), Term::iri(rdf::TYPE), era::era("ETCS"));
        graph.add(id.clone(), era::era("etcsMVersion"), spoofed.clone());
        graph.add(spoofed, skos("inScheme"), etcs_scheme());
        g.etcs.insert(id);
        g.truth.add(View::Target, shapes::ETCS, Some(&operators[0]), 1);
    }

    let mut dataset = Dataset::new();
    for (name, graph) in std::mem::take(&mut g.graphs) {
        dataset.insert_graph(name, graph);
    }
    dataset.insert_graph(era::ontology_graph(), ontology(false));
    dataset.insert_graph(era::skos_graph(), skos_vocabulary(false));
    dataset.insert_graph(era::countries_graph(), countries());
    dataset.insert_graph(era::borders_graph(), borders());
    g.truth.add(View::Extra, shapes::ONT_PROPERTY_LABEL, Some(&era::ontology_graph()), 1);
    g.truth.add(View::Extra, shapes::CONCEPT_LABEL, Some(&era::skos_graph()), 1);

    let merged = g.truth.shape_counts(View::Merged);
    for (shape, n) in &merged {
        g.truth.add(View::Full, shape, None, *n);
    }
    if config.duplicate_versions {
        dataset.insert_graph(era::rinf_ontology_graph(), ontology(false));
        dataset.insert_graph(era::rinf_skos_graph(), skos_vocabulary(false));
        dataset.insert_graph(era::v315_graph("ontology"), ontology(true));
        dataset.insert_graph(era::v315_graph("skos"), skos_vocabulary(true));
        dataset.insert_graph(era::v315_graph("shacl"), shacl_graph());
        dataset.insert_graph(era::rinf_dataset_graph(), metadata());
        g.truth.add(View::Extra, shapes::ONT_PROPERTY_LABEL, Some(&era::rinf_ontology_graph()), 1);
        g.truth.add(View::Extra, shapes::CONCEPT_LABEL, Some(&era::rinf_skos_graph()), 1);
        g.truth.add(View::Extra, shapes::SHAPE_HAS_PATH, Some(&era::v315_graph("shacl")), 1);
        // The second version points etcsMVersion at a scheme none of the data uses.
        g.truth.add(View::Full, shapes::ETCS, None, g.etcs.len());
    }

    Ok(Generated { dataset, truth: g.truth, operators })
}

struct Gen {
    rng: ChaCha8Rng,
    truth: GroundTruth,
    /// Every ETCS node placed in an operator graph.
    etcs: BTreeSet<Term>,
    graphs: Vec<(Term, Graph)>,
}

const CODE_CHARS: &[u8] = b"ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
const COUNTRIES: [&str; 6] = ["BEL", "CHE", "DEU", "FRA", "ITA", "NLD"];

impl Gen {
    fn operator_codes(&mut self, n: usize) -> Vec<String> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let code: String = (0..4).map(|_| *CODE_CHARS.choose(&mut self.rng).unwrap() as char).collect();
            if seen.insert(code.clone()) {
                out.push(code);
            }
        }
        out
    }

    fn record_per_operator(&mut self, shape: &str, graphs: &[Term]) {
        for g in graphs {
            self.truth.add(View::Target, shape, Some(g), 1);
            self.truth.add(View::Combination, shape, Some(g), 1);
        }
    }

    fn current(&mut self) -> Term {
        Term::typed(&self.rng.gen_range(0..=9999u32).to_string(), xsd::INTEGER)
    }

    fn violating_entity(&mut self, graph: &mut Graph, kind: ViolationKind, id: &Term) {
        match kind {
            ViolationKind::Pattern => {
                let bad = Term::typed(&self.rng.gen_range(10_000..100_000u32).to_string(), xsd::INTEGER);
                contact_line(graph, id, &[bad]);
            }
            ViolationKind::MaxCount => {
                let first = self.current();
                let second = loop {
                    let v = self.current();
                    if v != first {
                        break v;
                    }
                };
                contact_line(graph, id, &[first, second]);
            }
            ViolationKind::Datatype => {
                section(graph, id, "", None, &[concept("sol-natures/rinf/10")]);
                graph.add(id.clone(), era::era("lengthOfSectionOfLine"), Term::string("12.5"));
                graph.add(id.clone(), era::era("opStart"), data("shared", "op-start"));
            }
            ViolationKind::Skos => {
                self.etcs.insert(id.clone());
                etcs(graph, id, &concept("etcs-m-versions/rinf/99"));
            }
            ViolationKind::Class => {
                let country = self.country();
                operational_point(graph, id, &country);
                graph.add(id.clone(), era::era("notApplicable"), era::era("undeclaredProperty"));
            }
        }
    }

    fn country(&mut self) -> Term {
        Term::iri(&format!("{}{}", era::COUNTRY_BASE, COUNTRIES.choose(&mut self.rng).unwrap()))
    }

    /// One of four valid entities, cycling through the entity classes.
    fn filler(&mut self, graph: &mut Graph, code: &str, block: usize) {
        match block % 4 {
            0 => {
                let v = self.current();
                contact_line(graph, &data(code, &format!("cls{block}")), &[v]);
            }
            1 => {
                let id = data(code, &format!("etcs{block}"));
                let version = self.rng.gen_range(1..=4);
                self.etcs.insert(id.clone());
                etcs(graph, &id, &concept(&format!("etcs-m-versions/rinf/{version}")));
            }
            2 => {
                let id = data(code, &format!("op{block}"));
                let country = self.country();
                operational_point(graph, &id, &country);
                graph.add(id.clone(), era::era("uopid"), Term::string(&format!("{code}{block:05}")));
                match block % 3 {
                    0 => graph.add(id, era::era("notApplicable"), era::era("opName")),
                    1 => graph.add(id, era::era("notApplicable"), era::era("inCountry")),
                    _ => false,
                };
            }
            _ => {
                let id = data(code, &format!("sol{block}"));
                let km = format!("{}.{:03}", self.rng.gen_range(0..200), self.rng.gen_range(0..1000));
                let start = data(code, &format!("op{}", block.saturating_sub(1)));
                let nature = concept(if self.rng.gen_bool(0.5) { "sol-natures/rinf/10" } else { "sol-natures/rinf/20" });
                section(graph, &id, &km, Some(&start), &[nature]);
                graph.add(id, era::era("opEnd"), data(code, &format!("op{}", block + 2)));
            }
        }
    }
}

fn kind_slug(kind: ViolationKind) -> &'static str {
    match kind {
        ViolationKind::Pattern => "cls-pattern",
        ViolationKind::MaxCount => "cls-maxcount",
        ViolationKind::Datatype => "sol-datatype",
        ViolationKind::Skos => "etcs-skos",
        ViolationKind::Class => "op-class",
    }
}

fn data(code: &str, local: &str) -> Term {
    Term::iri(&format!("{}{code}/{local}", era::DATA_BASE))
}

fn concept(local: &str) -> Term {
    Term::iri(&format!("{}{local}", era::CONCEPT_BASE))
}

fn etcs_scheme() -> Term {
    concept("etcs-m-versions/EtcsMVersions")
}

fn skos(local: &str) -> Term {
    Term::iri(&format!("{SKOS}{local}"))
}

fn owl(local: &str) -> Term {
    Term::iri(&format!("{OWL}{local}"))
}

fn label(text: &str) -> Term {
    Term::Literal(Literal::lang(text, "en"))
}

fn contact_line(graph: &mut Graph, id: &Term, currents: &[Term]) {
    graph.add(id.clone(), Term::iri(rdf::TYPE), era::era("ContactLineSystem"));
    for c in currents {
        graph.add(id.clone(), era::era("maxTrainCurrent"), c.clone());
    }
}

fn etcs(graph: &mut Graph, id: &Term, version: &Term) {
    graph.add(id.clone(), Term::iri(rdf::TYPE), era::era("ETCS"));
    graph.add(id.clone(), era::era("etcsMVersion"), version.clone());
}

fn operational_point(graph: &mut Graph, id: &Term, country: &Term) {
    graph.add(id.clone(), Term::iri(rdf::TYPE), era::era("OperationalPoint"));
    graph.add(id.clone(), era::era("opName"), Term::string(&format!("OP {}", id.as_iri().unwrap_or_default().rsplit('/').next().unwrap_or(""))));
    graph.add(id.clone(), era::era("inCountry"), country.clone());
}

/// A section of line; an empty `km` omits the length.
fn section(graph: &mut Graph, id: &Term, km: &str, start: Option<&Term>, natures: &[Term]) {
    graph.add(id.clone(), Term::iri(rdf::TYPE), era::era("SectionOfLine"));
    if !km.is_empty() {
        graph.add(id.clone(), era::era("lengthOfSectionOfLine"), Term::typed(km, xsd::DECIMAL));
    }
    if let Some(s) = start {
        graph.add(id.clone(), era::era("opStart"), s.clone());
    }
    for n in natures {
        graph.add(id.clone(), era::era("solNature"), n.clone());
    }
}

const DATATYPE_PROPERTIES: [&str; 4] = ["maxTrainCurrent", "opName", "uopid", "lengthOfSectionOfLine"];
const OBJECT_PROPERTIES: [&str; 6] = ["etcsMVersion", "inCountry", "opStart", "opEnd", "solNature", "notApplicable"];

/// The ontology. Version 3.0.1 leaves `era:notApplicable` unlabelled; 3.1.5
/// labels it and moves `era:etcsMVersion` to a new concept scheme.
fn ontology(v315: bool) -> Graph {
    let mut g = Graph::new();
    let ty = Term::iri(rdf::TYPE);
    let lbl = Term::iri(rdfs::LABEL);
    for class in ["ContactLineSystem", "ETCS", "OperationalPoint", "SectionOfLine", "Border"] {
        g.add(era::era(class), ty.clone(), owl("Class"));
        g.add(era::era(class), lbl.clone(), label(class));
    }
    for (props, kind) in [(&DATATYPE_PROPERTIES[..], "DatatypeProperty"), (&OBJECT_PROPERTIES[..], "ObjectProperty")] {
        for p in props {
            g.add(era::era(p), ty.clone(), owl(kind));
            if *p != "notApplicable" || v315 {
                g.add(era::era(p), lbl.clone(), label(p));
            }
        }
    }
    let scheme = if v315 { concept("etcs-m-versions/v315/EtcsMVersions") } else { etcs_scheme() };
    g.add(era::era("etcsMVersion"), era::era("inSkosConceptScheme"), scheme);
    g.add(era::era("solNature"), era::era("inSkosConceptScheme"), concept("sol-natures/SolNatures"));
    g
}

/// Concept schemes. In version 3.0.1 one ETCS concept lacks a preferred label.
fn skos_vocabulary(v315: bool) -> Graph {
    let mut g = Graph::new();
    let ty = Term::iri(rdf::TYPE);
    let (scheme, prefix, count) =
        if v315 { (concept("etcs-m-versions/v315/EtcsMVersions"), "etcs-m-versions/v315/", 3) } else { (etcs_scheme(), "etcs-m-versions/rinf/", 5) };
    g.add(scheme.clone(), ty.clone(), skos("ConceptScheme"));
    for n in 1..=count {
        let c = concept(&format!("{prefix}{n}"));
        g.add(c.clone(), ty.clone(), skos("Concept"));
        g.add(c.clone(), skos("inScheme"), scheme.clone());
        if v315 || n != count {
            g.add(c, skos("prefLabel"), label(&format!("ETCS M version {n}")));
        }
    }
    if !v315 {
        let natures = concept("sol-natures/SolNatures");
        g.add(natures.clone(), ty.clone(), skos("ConceptScheme"));
        for n in [10, 20] {
            let c = concept(&format!("sol-natures/rinf/{n}"));
            g.add(c.clone(), ty.clone(), skos("Concept"));
            g.add(c.clone(), skos("inScheme"), natures.clone());
            g.add(c, skos("prefLabel"), label(&format!("Nature {n}")));
        }
    }
    g
}

fn countries() -> Graph {
    let mut g = Graph::new();
    for c in COUNTRIES {
        let id = Term::iri(&format!("{}{c}", era::COUNTRY_BASE));
        g.add(id.clone(), Term::iri(rdf::TYPE), skos("Concept"));
        g.add(id, skos("prefLabel"), label(c));
    }
    g
}

fn borders() -> Graph {
    let mut g = Graph::new();
    for (i, pair) in COUNTRIES.windows(2).enumerate() {
        let id = era::era(&format!("borders/{i}"));
        g.add(id.clone(), Term::iri(rdf::TYPE), era::era("Border"));
        for c in pair {
            g.add(id.clone(), era::era("inCountry"), Term::iri(&format!("{}{c}", era::COUNTRY_BASE)));
        }
    }
    g
}

/// Published shapes as data: one property shape lacks `sh:path`.
fn shacl_graph() -> Graph {
    let mut g = Graph::new();
    let ty = Term::iri(rdf::TYPE);
    let sh = |l: &str| Term::iri(&format!("{SH}{l}"));
    let with_path = era::shape("OpNameShape");
    g.add(with_path.clone(), ty.clone(), sh("PropertyShape"));
    g.add(with_path, sh("path"), era::era("opName"));
    let without = era::shape("BrokenShape");
    g.add(without.clone(), ty, sh("PropertyShape"));
    g.add(without, sh("minCount"), Term::integer(1));
    g
}

fn metadata() -> Graph {
    let mut g = Graph::new();
    let id = era::rinf_dataset_graph();
    g.add(id.clone(), Term::iri(rdf::TYPE), Term::iri("http://www.w3.org/ns/dcat#Dataset"));
    g.add(id, Term::iri("http://purl.org/dc/terms/modified"), Term::typed("2026-02-17", "http://www.w3.org/2001/XMLSchema#date"));
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use shaclds::io::write_nquads;

    #[test]
    fn same_seed_same_bytes() {
        let config = GeneratorConfig::new(7, 4, 200).with_violation(ViolationKind::Pattern, 2);
        let a = write_nquads(&generate(&config).unwrap().dataset);
        let b = write_nquads(&generate(&config).unwrap().dataset);
        assert_eq!(a, b);
        let c = write_nquads(&generate(&GeneratorConfig { seed: 8, ..config }).unwrap().dataset);
        assert_ne!(a, c);
    }

    #[test]
    fn graph_layout() {
        let generated = generate(&GeneratorConfig::new(1, 3, 50)).unwrap();
        let names: Vec<_> = generated.dataset.graph_names().collect();
        assert_eq!(names.len(), 7);
        for op in &generated.operators {
            let iri = op.as_iri().unwrap();
            let code = iri.strip_prefix(era::OPERATOR_GRAPH_BASE).unwrap();
            assert!(code.len() == 4 && code.bytes().all(|b| CODE_CHARS.contains(&b)));
            assert!(generated.dataset.named_graph(op).unwrap().len() >= 50);
        }
        let mut full = GeneratorConfig::new(1, 3, 50);
        full.duplicate_versions = true;
        assert_eq!(generate(&full).unwrap().dataset.graph_names().count(), 13);
    }

    #[test]
    fn truth_for_small_instance() {
        let mut config = GeneratorConfig::new(1, 3, 40).with_violation(ViolationKind::Pattern, 1);
        config.shared_triple_count = 1;
        let t = generate(&config).unwrap().truth;
        // One pattern violation per operator plus one shared pair.
        assert_eq!(t.count(View::Target, shapes::MAX_TRAIN_CURRENT), 3 + 2);
        assert_eq!(t.count(View::Merged, shapes::MAX_TRAIN_CURRENT), 3 + 1);
        assert_eq!(t.total(View::Combination), 5);
    }

    #[test]
    fn invalid_configs() {
        assert!(generate(&GeneratorConfig::new(1, 0, 10)).is_err());
        assert!(generate(&GeneratorConfig::new(1, 2, 10).with_violation(ViolationKind::Skos, 0)).is_err());
        let mut c = GeneratorConfig::new(1, 1, 10);
        c.divergence.missing_reference = true;
        assert!(generate(&c).is_err());
        let mut c = GeneratorConfig::new(1, 2, 10);
        c.shared_triple_count = 1;
        c.shared_copies = 3;
        assert!(generate(&c).is_err());
    }

    #[test]
    fn config_from_toml() {
        let text = r#"
            seed = 3
            operators = 4
            triples-per-operator = 100
            shared-triple-count = 2
            violations = [{ kind = "max-count", per-operator = 1 }]
            [divergence]
            spoof = true
        "#;
        let c: GeneratorConfig = toml::from_str(text).unwrap();
        assert_eq!(c.violations[0].kind, ViolationKind::MaxCount);
        assert_eq!(c.shared_copies, 2);
        assert!(c.divergence.spoof && !c.divergence.missing_reference);
        assert!(toml::from_str::<GeneratorConfig>("seed = 1\noperators = 1\ntriples-per-operator = 1\nbogus = 2").is_err());
    }
}
