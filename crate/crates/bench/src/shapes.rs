//! Shapes graphs and shapes datasets for the benchmark configurations.

use std::fmt::Write;

use shaclds::Term;

use crate::era::{self, sg};

const PREFIXES: &str = r#"@prefix era: <http://data.europa.eu/949/> .
@prefix era-g: <http://data.europa.eu/949/graph/> .
@prefix era-sh: <http://data.europa.eu/949/shapes/> .
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
@prefix sh: <http://www.w3.org/ns/shacl#> .
@prefix shds: <http://www.w3id.org/shacl-ds#> .
@prefix skos: <http://www.w3.org/2004/02/skos/core#> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
"#;

/// Shapes shared by both variants of the operator shapes graph.
const RINF_COMMON: &str = r#"
era-sh:ContactLineSystemShape a sh:NodeShape ;
    sh:targetClass era:ContactLineSystem ;
    sh:property era-sh:MaximumTrainCurrent .

era-sh:MaximumTrainCurrent a sh:PropertyShape ;
    rdfs:comment "Indication of the maximum allowable train current"@en ;
    sh:path era:maxTrainCurrent ;
    sh:datatype xsd:integer ;
    sh:pattern "^([1-9]\\d{0,3}|0)$" ;
    sh:maxCount 1 ;
    sh:severity sh:Violation ;
    sh:message "maxTrainCurrent: at most one integer of up to four digits"@en .

era-sh:SectionOfLineShape a sh:NodeShape ;
    sh:targetClass era:SectionOfLine ;
    sh:property era-sh:LengthOfSectionOfLine, era-sh:SolOpStart, era-sh:SolNature .

era-sh:LengthOfSectionOfLine a sh:PropertyShape ;
    sh:path era:lengthOfSectionOfLine ;
    sh:datatype xsd:decimal ;
    sh:message "lengthOfSectionOfLine: decimal number of kilometres"@en .

era-sh:SolOpStart a sh:PropertyShape ;
    sh:path era:opStart ;
    sh:minCount 1 ;
    sh:message "opStart: a section of line starts at an operational point"@en .

era-sh:SolNature a sh:PropertyShape ;
    sh:path era:solNature ;
    sh:maxCount 1 ;
    sh:message "solNature: at most one nature"@en .

era-sh:ETCSShape a sh:NodeShape ;
    sh:targetClass era:ETCS ;
    sh:sparql era-sh:EtcsMVersionSKOS .

era-sh:OperationalPointShape a sh:NodeShape ;
    sh:targetClass era:OperationalPoint ;
    sh:property era-sh:NotApplicableProperty .
"#;

/// Lookups read the focus graph, so ontology and SKOS triples must be merged in.
const RINF_UNPINNED: &str = r#"
era-sh:EtcsMVersionSKOS a sh:SPARQLConstraint ;
    sh:message "etcsMVersion: value outside the concept scheme"@en ;
    sh:select """
PREFIX era: <http://data.europa.eu/949/>
PREFIX skos: <http://www.w3.org/2004/02/skos/core#>
SELECT $this ?concept (era:etcsMVersion AS ?path)
WHERE {
  $this era:etcsMVersion ?concept .
  era:etcsMVersion era:inSkosConceptScheme ?conceptScheme .
  FILTER NOT EXISTS { ?concept skos:inScheme ?conceptScheme . }
}""" .

era-sh:NotApplicableProperty a sh:PropertyShape ;
    sh:path era:notApplicable ;
    sh:or ( [ sh:class owl:ObjectProperty ] [ sh:class owl:DatatypeProperty ] ) ;
    sh:message "notApplicable: value must be a declared property"@en .
"#;

/// Lookups pinned to the reference graphs with GRAPH clauses.
const RINF_PINNED: &str = r#"
era-sh:EtcsMVersionSKOS a sh:SPARQLConstraint ;
    sh:message "etcsMVersion: value outside the concept scheme"@en ;
    sh:select """
PREFIX era: <http://data.europa.eu/949/>
PREFIX era-g: <http://data.europa.eu/949/graph/>
PREFIX skos: <http://www.w3.org/2004/02/skos/core#>
SELECT $this ?concept (era:etcsMVersion AS ?path)
WHERE {
  $this era:etcsMVersion ?concept .
  GRAPH era-g:ontology { era:etcsMVersion era:inSkosConceptScheme ?conceptScheme . }
  FILTER NOT EXISTS { GRAPH era-g:skos { ?concept skos:inScheme ?conceptScheme . } }
}""" .

era-sh:NotApplicableProperty a sh:PropertyShape ;
    sh:path era:notApplicable ;
    sh:message "notApplicable: value must be a declared property"@en ;
    sh:sparql [ sh:select """
PREFIX era: <http://data.europa.eu/949/>
PREFIX era-g: <http://data.europa.eu/949/graph/>
PREFIX owl: <http://www.w3.org/2002/07/owl#>
SELECT DISTINCT $this WHERE {
  $this era:notApplicable ?property .
  FILTER NOT EXISTS {
    { GRAPH era-g:ontology { ?property a owl:ObjectProperty . } }
    UNION
    { GRAPH era-g:ontology { ?property a owl:DatatypeProperty . } } } }""" ] .
"#;

const SG_ONT: &str = r#"
era-sh:OntologyPropertyShape a sh:NodeShape ;
    sh:targetClass owl:ObjectProperty, owl:DatatypeProperty ;
    sh:property era-sh:OntologyPropertyLabel .

era-sh:OntologyPropertyLabel a sh:PropertyShape ;
    sh:path rdfs:label ;
    sh:minCount 1 .
"#;

const SG_SKOS: &str = r#"
era-sh:ConceptShape a sh:NodeShape ;
    sh:targetClass skos:Concept ;
    sh:property era-sh:ConceptPrefLabel .

era-sh:ConceptPrefLabel a sh:PropertyShape ;
    sh:path skos:prefLabel ;
    sh:minCount 1 .
"#;

const SG_SHACL: &str = r#"
era-sh:PropertyShapeShape a sh:NodeShape ;
    sh:targetClass sh:PropertyShape ;
    sh:property era-sh:PropertyShapeHasPath .

era-sh:PropertyShapeHasPath a sh:PropertyShape ;
    sh:path sh:path ;
    sh:minCount 1 .
"#;

/// The operator shapes graph as Turtle. `pinned` selects the rewrite whose
/// cross-graph lookups name the reference graphs explicitly.
pub fn rinf_turtle(pinned: bool) -> String {
    format!("{PREFIXES}{RINF_COMMON}{}", if pinned { RINF_PINNED } else { RINF_UNPINNED })
}

fn graph_block(out: &mut String, name: &str, body: &str) {
    writeln!(out, "GRAPH <{name}> {{{body}}}").unwrap();
}

fn extra_graphs(out: &mut String) {
    writeln!(out, "era-sh:sg-ont shds:targetGraphPattern \"{}\" .", era::ONTOLOGY_PATTERN).unwrap();
    writeln!(out, "era-sh:sg-skos shds:targetGraphPattern \"{}\" .", era::SKOS_PATTERN).unwrap();
    writeln!(out, "era-sh:sg-shacl shds:targetGraphPattern \"{}\" .", era::SHACL_PATTERN).unwrap();
    graph_block(out, sg::ONT, SG_ONT);
    graph_block(out, sg::SKOS, SG_SKOS);
    graph_block(out, sg::SHACL, SG_SHACL);
}

/// Target Strategy: the pinned operator shapes on every operator graph, by pattern.
pub fn target_trig(extra: bool) -> String {
    let mut out = String::from(PREFIXES);
    writeln!(out, "era-sh:sg-rinf shds:targetGraphPattern \"{}\" .", era::OPERATOR_PATTERN).unwrap();
    graph_block(&mut out, sg::RINF, &format!("{RINF_COMMON}{RINF_PINNED}"));
    if extra {
        extra_graphs(&mut out);
    }
    out
}

/// Combination Strategy: one `shds:or` of each operator graph with the shared
/// reference graphs.
pub fn combination_trig(operators: &[Term], extra: bool) -> String {
    let mut out = String::from(PREFIXES);
    out.push_str("_:refGraphs shds:or ( era-g:ontology era-g:skos era-g:countries era-g:borders ) .\n");
    for op in operators {
        writeln!(out, "era-sh:sg-rinf shds:targetGraphCombination [ shds:or ( <{}> _:refGraphs ) ] .", op.as_iri().unwrap_or_default()).unwrap();
    }
    graph_block(&mut out, sg::RINF, &format!("{RINF_COMMON}{RINF_UNPINNED}"));
    if extra {
        extra_graphs(&mut out);
    }
    out
}

/// The unpinned operator shapes on the union of every graph.
pub fn or_all_trig() -> String {
    let mut out = String::from(PREFIXES);
    out.push_str("era-sh:sg-rinf shds:targetGraphCombination [ shds:or ( shds:all ) ] .\n");
    graph_block(&mut out, sg::RINF, &format!("{RINF_COMMON}{RINF_UNPINNED}"));
    out
}
