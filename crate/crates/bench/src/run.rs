//! The six benchmark configurations and timed runs.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use shaclds::ds::{execute, load_shapes_dataset, merge_graphs, plan, ShapesDataset, TargetSpec, ValidateOptions};
use shaclds::ds::flatten;
use shaclds::io::{parse_trig, parse_turtle};
use shaclds::shacl::{load_shapes, validate_graph, Constraint, ShapesGraph, ValidationReport};
use shaclds::sparql::Pattern;
use shaclds::{Dataset, Term};

use crate::era;
use crate::shapes;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{config} needs {expected} shapes")]
    Mismatch { config: BenchConfigId, expected: &'static str },
    #[error("repeats must be at least 1")]
    NoRepeats,
    #[error(transparent)]
    Ds(#[from] shaclds::ds::DsError),
    #[error("shapes: {0}")]
    Shapes(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BenchConfigId {
    ShaclBaseline,
    ShaclFull,
    DsTarget,
    DsTargetExtra,
    DsCombo,
    DsComboExtra,
}

impl BenchConfigId {
    pub const ALL: [BenchConfigId; 6] = [
        BenchConfigId::ShaclBaseline,
        BenchConfigId::ShaclFull,
        BenchConfigId::DsTarget,
        BenchConfigId::DsTargetExtra,
        BenchConfigId::DsCombo,
        BenchConfigId::DsComboExtra,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BenchConfigId::ShaclBaseline => "shacl-baseline",
            BenchConfigId::ShaclFull => "shacl-full",
            BenchConfigId::DsTarget => "ds-target",
            BenchConfigId::DsTargetExtra => "ds-target-extra",
            BenchConfigId::DsCombo => "ds-combo",
            BenchConfigId::DsComboExtra => "ds-combo-extra",
        }
    }

    /// Row label in the summary table.
    pub fn label(self) -> &'static str {
        match self {
            BenchConfigId::ShaclBaseline => "SHACL baseline",
            BenchConfigId::ShaclFull => "SHACL-full",
            BenchConfigId::DsTarget => "SHACL-DS Target",
            BenchConfigId::DsTargetExtra => "SHACL-DS Target Extra",
            BenchConfigId::DsCombo => "SHACL-DS Combo",
            BenchConfigId::DsComboExtra => "SHACL-DS Combo Extra",
        }
    }

    /// Configurations that validate one flattened graph with plain SHACL.
    pub fn is_flat(self) -> bool {
        matches!(self, BenchConfigId::ShaclBaseline | BenchConfigId::ShaclFull)
    }

    /// Label of the creation phase, if the configuration has one worth reporting.
    pub fn creation_label(self) -> Option<&'static str> {
        match self {
            BenchConfigId::ShaclBaseline | BenchConfigId::ShaclFull => Some("Merge"),
            BenchConfigId::DsCombo | BenchConfigId::DsComboExtra => Some("View creation"),
            BenchConfigId::DsTarget | BenchConfigId::DsTargetExtra => None,
        }
    }
}

impl fmt::Display for BenchConfigId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, thiserror::Error)]
#[error("unknown benchmark configuration {0:?}")]
pub struct UnknownConfig(pub String);

impl FromStr for BenchConfigId {
    type Err = UnknownConfig;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BenchConfigId::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| UnknownConfig(s.to_owned()))
    }
}

/// Shapes as loaded before timing starts.
pub enum BenchShapes {
    Flat(ShapesGraph),
    Dataset(ShapesDataset),
}

/// The shapes each configuration runs with on a generated dataset.
pub fn shapes_for(id: BenchConfigId, operators: &[Term]) -> Result<BenchShapes, RunError> {
    let dataset = |text: String| -> Result<BenchShapes, RunError> {
        let parsed = parse_trig(&text).map_err(|e| RunError::Shapes(e.to_string()))?;
        Ok(BenchShapes::Dataset(load_shapes_dataset(&parsed.dataset)?))
    };
    match id {
        BenchConfigId::ShaclBaseline | BenchConfigId::ShaclFull => {
            let g = parse_turtle(&shapes::rinf_turtle(false), None).map_err(|e| RunError::Shapes(e.to_string()))?.graph;
            Ok(BenchShapes::Flat(load_shapes(&g).map_err(|e| RunError::Shapes(e.to_string()))?))
        }
        BenchConfigId::DsTarget => dataset(shapes::target_trig(false)),
        BenchConfigId::DsTargetExtra => dataset(shapes::target_trig(true)),
        BenchConfigId::DsCombo => dataset(shapes::combination_trig(operators, false)),
        BenchConfigId::DsComboExtra => dataset(shapes::combination_trig(operators, true)),
    }
}

/// Graphs merged for the baseline: the operator graphs and the four reference graphs.
pub fn baseline_graphs(data: &Dataset) -> Vec<Term> {
    let pattern = regex::Regex::new(era::OPERATOR_PATTERN).expect("valid pattern");
    let refs = era::reference_graphs();
    data.graph_names()
        .filter(|n| refs.contains(n) || n.as_iri().is_some_and(|iri| pattern.is_match(iri)))
        .cloned()
        .collect()
}

/// Pattern-targeted shapes graphs whose SPARQL constraints never name a graph:
/// such constraints see only the focus graph.
pub fn unpinned_warnings(shapes: &ShapesDataset) -> Vec<String> {
    let mut out = Vec::new();
    for (name, sg) in shapes.shapes_graphs() {
        let pattern_targeted =
            shapes.declarations().iter().any(|d| &d.shapes_graph == name && matches!(d.target, TargetSpec::Pattern(_)));
        if !pattern_targeted {
            continue;
        }
        let unpinned = sg.shapes().iter().flat_map(|s| &s.constraints).any(|c| match c {
            Constraint::Sparql(c) => !mentions_graph(&c.query.pattern),
            _ => false,
        });
        if unpinned {
            out.push(format!("shapes graph {name} has SPARQL constraints without GRAPH clauses"));
        }
    }
    out
}

fn mentions_graph(p: &Pattern) -> bool {
    match p {
        Pattern::Bgp(_) => false,
        Pattern::Graph { .. } => true,
        Pattern::Join(l, r) | Pattern::Union(l, r) => mentions_graph(l) || mentions_graph(r),
        Pattern::Filter { inner, .. } => mentions_graph(inner),
        Pattern::NotExists { pattern, outer } | Pattern::Exists { pattern, outer } => {
            mentions_graph(pattern) || mentions_graph(outer)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub config: BenchConfigId,
    pub run: usize,
    pub creation_s: f64,
    pub validation_s: f64,
    pub errors: usize,
}

pub struct RunOutcome {
    pub creation: Duration,
    pub validation: Duration,
    pub report: ValidationReport,
}

/// One run: the creation phase (merge, or focus-graph resolution) and the
/// validation phase, timed separately.
pub fn run_once(id: BenchConfigId, data: &Dataset, shapes: &BenchShapes, parallelism: usize) -> Result<RunOutcome, RunError> {
    match (id.is_flat(), shapes) {
        (true, BenchShapes::Flat(sg)) => {
            let start = Instant::now();
            let merged = if id == BenchConfigId::ShaclFull { flatten(data) } else { merge_graphs(data, &baseline_graphs(data)) };
            let creation = start.elapsed();
            let start = Instant::now();
            let report = validate_graph(sg, &merged, None);
            Ok(RunOutcome { creation, validation: start.elapsed(), report })
        }
        (false, BenchShapes::Dataset(sd)) => {
            let start = Instant::now();
            let p = plan(sd, data);
            let creation = start.elapsed();
            let start = Instant::now();
            let report = execute(sd, data, &p, &ValidateOptions { parallelism })?;
            Ok(RunOutcome { creation, validation: start.elapsed(), report })
        }
        (true, _) => Err(RunError::Mismatch { config: id, expected: "flat" }),
        (false, _) => Err(RunError::Mismatch { config: id, expected: "dataset" }),
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub repeats: usize,
    /// Runs one untimed pass first.
    pub warmup: bool,
    pub parallelism: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { repeats: 10, warmup: true, parallelism: 1 }
    }
}

/// `options.repeats` timed runs, numbered from 1; runs execute serially.
pub fn run_config(id: BenchConfigId, data: &Dataset, shapes: &BenchShapes, options: &RunOptions) -> Result<Vec<RunRecord>, RunError> {
    if options.repeats == 0 {
        return Err(RunError::NoRepeats);
    }
    if options.warmup {
        run_once(id, data, shapes, options.parallelism)?;
    }
    (1..=options.repeats)
        .map(|run| {
            let o = run_once(id, data, shapes, options.parallelism)?;
            Ok(RunRecord {
                config: id,
                run,
                creation_s: o.creation.as_secs_f64(),
                validation_s: o.validation.as_secs_f64(),
                errors: o.report.len(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{generate, GeneratorConfig, View, ViolationKind};

    #[test]
    fn config_names_round_trip() {
        for id in BenchConfigId::ALL {
            assert_eq!(id.name().parse::<BenchConfigId>().unwrap(), id);
        }
        assert!("ds-targets".parse::<BenchConfigId>().is_err());
    }

    #[test]
    fn error_counts_follow_ground_truth() {
        let config = GeneratorConfig::new(1, 3, 60).with_violation(ViolationKind::Pattern, 1);
        let g = generate(&config).unwrap();
        let options = RunOptions { repeats: 2, warmup: false, parallelism: 1 };
        let expect = [
            (BenchConfigId::ShaclBaseline, View::Merged),
            (BenchConfigId::DsTarget, View::Target),
            (BenchConfigId::DsCombo, View::Combination),
        ];
        for (id, view) in expect {
            let shapes = shapes_for(id, &g.operators).unwrap();
            let runs = run_config(id, &g.dataset, &shapes, &options).unwrap();
            assert_eq!(runs.len(), 2);
            assert!(runs.iter().all(|r| r.errors == g.truth.total(view) && r.creation_s >= 0.0), "{id}");
        }
        let flat = shapes_for(BenchConfigId::ShaclBaseline, &g.operators).unwrap();
        assert!(matches!(run_once(BenchConfigId::DsTarget, &g.dataset, &flat, 1), Err(RunError::Mismatch { .. })));
        let opts = RunOptions { repeats: 0, ..options };
        assert!(matches!(run_config(BenchConfigId::ShaclBaseline, &g.dataset, &flat, &opts), Err(RunError::NoRepeats)));
    }

    #[test]
    fn unpinned_pattern_targets_are_flagged() {
        let text = shapes::target_trig(false).replace("GRAPH era-g:ontology {", "{").replace("GRAPH era-g:skos {", "{");
        let sd = load_shapes_dataset(&parse_trig(&text).unwrap().dataset).unwrap();
        assert_eq!(unpinned_warnings(&sd).len(), 1);
        let BenchShapes::Dataset(sd) = shapes_for(BenchConfigId::DsTarget, &[]).unwrap() else { panic!() };
        assert!(unpinned_warnings(&sd).is_empty());
    }
}
