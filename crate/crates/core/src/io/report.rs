//! Validation reports as Turtle.
//!
//! The layout is fixed: one anonymous `sh:ValidationReport` node whose
//! results are anonymous nodes in a deterministic order. Reading a report and
//! serializing it again reproduces the input byte for byte.

use std::fmt::Write;

use crate::model::{Graph, Term};
use crate::shacl::{PropertyPath, ValidationReport, ValidationResult};
use crate::vocab::{rdf, sh, shds, RDF, SH, SHDS, XSD};

use super::write::TermFormatter;
use super::{parse_turtle_with, BlankScope, ParseOptions, PrefixMap, SyntaxError};

#[derive(Debug, thiserror::Error)]
pub enum ReportReadError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("malformed report: {0}")]
    Malformed(String),
}

fn report_prefixes() -> PrefixMap {
    [("rdf", RDF), ("sh", SH), ("shds", SHDS), ("xsd", XSD)].into_iter().map(|(p, ns)| (p.to_owned(), ns.to_owned())).collect()
}

fn serialization_key(r: &ValidationResult) -> impl Ord + '_ {
    (
        &r.focus_graph,
        &r.source_shape,
        &r.focus_node,
        &r.path,
        &r.value,
        (&r.source_constraint_component, &r.severity, &r.message, &r.source_shapes_graph),
    )
}

pub fn serialize_report(report: &ValidationReport) -> String {
    let prefixes = report_prefixes();
    let fmt = TermFormatter::new(&prefixes);
    let mut out = fmt.prefix_block();
    out.push_str("[] a sh:ValidationReport ;\n");
    write!(out, "    sh:conforms {}", report.conforms()).unwrap();
    let mut results: Vec<&ValidationResult> = report.results.iter().collect();
    results.sort_by(|a, b| serialization_key(a).cmp(&serialization_key(b)));
    for (i, r) in results.iter().enumerate() {
        out.push_str(if i == 0 { " ;\n    sh:result [\n" } else { ", [\n" });
        let mut lines = vec!["a sh:ValidationResult".to_owned(), format!("sh:focusNode {}", fmt.term(&r.focus_node))];
        match &r.path {
            Some(PropertyPath::Predicate(p)) => lines.push(format!("sh:resultPath {}", fmt.term(p))),
            Some(PropertyPath::Inverse(p)) => lines.push(format!("sh:resultPath [ sh:inversePath {} ]", fmt.term(p))),
            None => {}
        }
        if let Some(v) = &r.value {
            lines.push(format!("sh:value {}", fmt.term(v)));
        }
        lines.push(format!("sh:sourceShape {}", fmt.term(&r.source_shape)));
        lines.push(format!("sh:sourceConstraintComponent {}", fmt.term(&r.source_constraint_component)));
        lines.push(format!("sh:resultSeverity {}", fmt.term(&r.severity)));
        if let Some(m) = &r.message {
            lines.push(format!("sh:resultMessage {}", fmt.term(m)));
        }
        if let Some(g) = &r.focus_graph {
            lines.push(format!("shds:focusGraph {}", fmt.term(g)));
        }
        if let Some(g) = &r.source_shapes_graph {
            lines.push(format!("shds:sourceShapeGraph {}", fmt.term(g)));
        }
        for (j, line) in lines.iter().enumerate() {
            let sep = if j + 1 < lines.len() { " ;" } else { "" };
            writeln!(out, "        {line}{sep}").unwrap();
        }
        out.push_str("    ]");
    }
    out.push_str(" .\n");
    out
}

/// Reads a report written by [`serialize_report`] or any Turtle document with
/// a single `sh:ValidationReport`. Results come back in normalized order.
pub fn read_report(text: &str) -> Result<ValidationReport, ReportReadError> {
    let options = ParseOptions { base: None, blank_scope: BlankScope::Preserve };
    let graph = parse_turtle_with(text, &options)?.graph;
    let reports: Vec<&Term> = graph.subjects(&Term::iri(rdf::TYPE), &Term::iri(sh::VALIDATION_REPORT)).collect();
    let report = match reports.as_slice() {
        [r] => *r,
        [] => return Err(ReportReadError::Malformed("no sh:ValidationReport".into())),
        _ => return Err(ReportReadError::Malformed("more than one sh:ValidationReport".into())),
    };
    let mut results = Vec::new();
    for node in graph.objects(report, &Term::iri(sh::RESULT)) {
        results.push(read_result(&graph, node)?);
    }
    Ok(ValidationReport::new(results))
}

fn read_result(g: &Graph, node: &Term) -> Result<ValidationResult, ReportReadError> {
    let optional = |p: &str| -> Result<Option<Term>, ReportReadError> {
        let values: Vec<&Term> = g.objects(node, &Term::iri(p)).collect();
        match values.as_slice() {
            [] => Ok(None),
            [v] => Ok(Some((*v).clone())),
            _ => Err(ReportReadError::Malformed(format!("result {node} has several values for <{p}>"))),
        }
    };
    let required = |p: &str| -> Result<Term, ReportReadError> {
        optional(p)?.ok_or_else(|| ReportReadError::Malformed(format!("result {node} lacks <{p}>")))
    };
    let path = match optional(sh::RESULT_PATH)? {
        None => None,
        Some(p) if p.is_iri() => Some(PropertyPath::Predicate(p)),
        Some(p) => match g.object(&p, &Term::iri(sh::INVERSE_PATH)) {
            Some(inner) if inner.is_iri() => Some(PropertyPath::Inverse(inner.clone())),
            _ => return Err(ReportReadError::Malformed(format!("unsupported result path at {node}"))),
        },
    };
    Ok(ValidationResult {
        source_shapes_graph: optional(shds::SOURCE_SHAPE_GRAPH)?,
        focus_graph: optional(shds::FOCUS_GRAPH)?,
        source_shape: required(sh::SOURCE_SHAPE)?,
        focus_node: required(sh::FOCUS_NODE)?,
        path,
        value: optional(sh::VALUE)?,
        source_constraint_component: required(sh::SOURCE_CONSTRAINT_COMPONENT)?,
        severity: required(sh::RESULT_SEVERITY)?,
        message: optional(sh::RESULT_MESSAGE)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Literal;

    fn result(i: i64) -> ValidationResult {
        ValidationResult {
            source_shapes_graph: Some(Term::iri("http://x/sg")),
            focus_graph: Some(Term::iri(&format!("http://x/g{}", i % 3))),
            source_shape: Term::iri("http://x/S"),
            focus_node: if i % 2 == 0 { Term::iri(&format!("http://x/n{i}")) } else { Term::blank(&format!("b{i}")) },
            path: match i % 3 {
                0 => None,
                1 => Some(PropertyPath::Predicate(Term::iri("http://x/p"))),
                _ => Some(PropertyPath::Inverse(Term::iri("http://x/q"))),
            },
            value: (i % 4 != 0).then(|| Term::integer(i)),
            source_constraint_component: Term::iri(sh::MIN_COUNT_COMPONENT),
            severity: Term::iri(sh::VIOLATION),
            message: (i % 5 == 0).then(|| Term::Literal(Literal::lang("bad \"value\"", "en"))),
        }
    }

    #[test]
    fn round_trip_is_a_fixed_point() {
        let report = ValidationReport::new((0..12).map(result).collect());
        let text = serialize_report(&report);
        let back = read_report(&text).unwrap();
        assert_eq!(back, report);
        assert_eq!(serialize_report(&back), text);
    }

    #[test]
    fn empty_report_conforms() {
        let text = serialize_report(&ValidationReport::default());
        assert!(text.contains("sh:conforms true"));
        assert!(read_report(&text).unwrap().is_empty());
    }

    #[test]
    fn duplicates_survive() {
        let report = ValidationReport::new(vec![result(1), result(1)]);
        assert_eq!(read_report(&serialize_report(&report)).unwrap().len(), 2);
    }

    #[test]
    fn malformed_reports() {
        assert!(matches!(read_report("<a> <b> <c> ."), Err(ReportReadError::Malformed(_))));
        assert!(matches!(read_report("<a> <b>"), Err(ReportReadError::Syntax(_))));
    }
}
