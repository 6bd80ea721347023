//! Post-processing of validation reports: deduplication, per-shape counts and
//! count differences between two reports.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::model::Term;
use crate::shacl::{PropertyPath, ValidationReport, ValidationResult};

/// The standard result fields; the focus-graph and shapes-graph annotations
/// are not part of the key.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DedupKey {
    pub focus_node: Term,
    pub path: Option<PropertyPath>,
    pub value: Option<Term>,
    pub source_shape: Term,
    pub source_constraint_component: Term,
    pub severity: Term,
    /// Lexical form of the message.
    pub message: Option<String>,
}

impl From<&ValidationResult> for DedupKey {
    fn from(r: &ValidationResult) -> Self {
        DedupKey {
            focus_node: r.focus_node.clone(),
            path: r.path.clone(),
            value: r.value.clone(),
            source_shape: r.source_shape.clone(),
            source_constraint_component: r.source_constraint_component.clone(),
            severity: r.severity.clone(),
            message: r.message.as_ref().and_then(|m| m.lexical_str()).map(str::to_owned),
        }
    }
}

/// Keeps the first result (in normalized order) for each [`DedupKey`] and
/// returns the number of results removed.
pub fn dedup(report: &ValidationReport) -> (ValidationReport, usize) {
    let mut sorted = report.results.clone();
    sorted.sort();
    let mut seen = BTreeSet::new();
    sorted.retain(|r| seen.insert(DedupKey::from(r)));
    let removed = report.len() - sorted.len();
    (ValidationReport::new(sorted), removed)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShapeCountTable {
    pub per_shape: BTreeMap<Term, usize>,
    /// Only results that carry a focus graph are counted here.
    pub per_focus_graph: BTreeMap<Term, usize>,
    pub total: usize,
    pub deduped_total: usize,
}

impl ShapeCountTable {
    pub fn count(&self, shape: &Term) -> usize {
        self.per_shape.get(shape).copied().unwrap_or(0)
    }
}

pub fn group_counts(report: &ValidationReport) -> ShapeCountTable {
    let mut table = ShapeCountTable { total: report.len(), ..Default::default() };
    let mut keys = BTreeSet::new();
    for r in &report.results {
        *table.per_shape.entry(r.source_shape.clone()).or_default() += 1;
        if let Some(g) = &r.focus_graph {
            *table.per_focus_graph.entry(g.clone()).or_default() += 1;
        }
        keys.insert(DedupKey::from(r));
    }
    table.deduped_total = keys.len();
    table
}

/// Shapes whose counts differ, as `(shape, count in a, count in b)`, ordered by
/// absolute difference (largest first), then by `b - a` (descending), then shape.
pub fn diff_counts(a: &ShapeCountTable, b: &ShapeCountTable) -> Vec<(Term, usize, usize)> {
    let shapes: BTreeSet<&Term> = a.per_shape.keys().chain(b.per_shape.keys()).collect();
    let mut out: Vec<(Term, usize, usize)> = shapes
        .into_iter()
        .map(|s| (s.clone(), a.count(s), b.count(s)))
        .filter(|(_, x, y)| x != y)
        .collect();
    out.sort_by(|(s1, a1, b1), (s2, a2, b2)| {
        let d1 = *b1 as i64 - *a1 as i64;
        let d2 = *b2 as i64 - *a2 as i64;
        d2.abs().cmp(&d1.abs()).then(d2.cmp(&d1)).then(s1.cmp(s2))
    });
    out
}

/// Shape identifier for tabular output: bare IRI, or `_:label`.
pub fn shape_label(t: &Term) -> String {
    match t.as_iri() {
        Some(iri) => iri.to_owned(),
        None => t.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

/// `shape,count` rows in shape order.
pub fn counts_to_csv(table: &ShapeCountTable) -> String {
    let mut out = String::from("shape,count\n");
    for (shape, n) in &table.per_shape {
        writeln!(out, "{},{n}", csv_field(&shape_label(shape))).unwrap();
    }
    out
}

/// Aligned two-column table followed by totals.
pub fn counts_to_text(table: &ShapeCountTable) -> String {
    let labels: Vec<(String, usize)> = table.per_shape.iter().map(|(s, n)| (shape_label(s), *n)).collect();
    let width = labels.iter().map(|(l, _)| l.len()).max().unwrap_or(0).max("shape".len());
    let mut out = format!("{:<width$}  {:>8}\n", "shape", "count");
    for (l, n) in &labels {
        writeln!(out, "{l:<width$}  {n:>8}").unwrap();
    }
    writeln!(out, "{:<width$}  {:>8}", "total", table.total).unwrap();
    writeln!(out, "{:<width$}  {:>8}", "deduplicated", table.deduped_total).unwrap();
    out
}

/// `shape,a,b,delta` rows in [`diff_counts`] order.
pub fn diff_to_csv(diff: &[(Term, usize, usize)]) -> String {
    let mut out = String::from("shape,a,b,delta\n");
    for (s, a, b) in diff {
        writeln!(out, "{},{a},{b},{}", csv_field(&shape_label(s)), *b as i64 - *a as i64).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vocab::sh;

    fn r(shape: &str, node: &str, graph: &str) -> ValidationResult {
        ValidationResult {
            source_shapes_graph: Some(Term::iri("http://x/sg")),
            focus_graph: Some(Term::iri(graph)),
            source_shape: Term::iri(shape),
            focus_node: Term::iri(node),
            path: None,
            value: None,
            source_constraint_component: Term::iri(sh::MIN_COUNT_COMPONENT),
            severity: Term::iri(sh::VIOLATION),
            message: None,
        }
    }

    fn table(counts: &[(&str, usize)]) -> ShapeCountTable {
        ShapeCountTable { per_shape: counts.iter().map(|(s, n)| (Term::iri(s), *n)).collect(), ..Default::default() }
    }

    #[test]
    fn dedup_ignores_graph_annotations() {
        let report = ValidationReport::new(vec![r("http://S", "http://n", "http://g1"), r("http://S", "http://n", "http://g2"), r("http://S", "http://m", "http://g1")]);
        let (d, removed) = dedup(&report);
        assert_eq!((d.len(), removed), (2, 1));
        assert_eq!(d.results[0].focus_graph, Some(Term::iri("http://g1")));
        let t = group_counts(&report);
        assert_eq!((t.total, t.deduped_total), (3, 2));
        assert_eq!(t.per_focus_graph[&Term::iri("http://g1")], 2);
        assert_eq!(dedup(&d), (d.clone(), 0));
    }

    #[test]
    fn diff_order() {
        let d = diff_counts(&table(&[("A", 3)]), &table(&[("A", 2), ("B", 1)]));
        assert_eq!(d, vec![(Term::iri("B"), 0, 1), (Term::iri("A"), 3, 2)]);
        assert!(diff_counts(&table(&[("A", 1)]), &table(&[("A", 1)])).is_empty());
        let d = diff_counts(&table(&[("A", 5), ("B", 0)]), &table(&[("A", 3), ("B", 2), ("C", 1)]));
        assert_eq!(d.iter().map(|x| x.0.as_iri().unwrap()).collect::<Vec<_>>(), ["B", "A", "C"]);
    }

    #[test]
    fn csv_output() {
        let t = table(&[("http://x/S,1", 2), ("http://x/T", 1)]);
        assert_eq!(counts_to_csv(&t), "shape,count\n\"http://x/S,1\",2\nhttp://x/T,1\n");
        assert_eq!(diff_to_csv(&[(Term::iri("http://x/A"), 3, 2)]), "shape,a,b,delta\nhttp://x/A,3,2,-1\n");
    }
}
