use std::collections::BTreeMap;

use shaclds::ds::{resolve_focus_graphs, GraphPattern, TargetSpec};
use shaclds::report::dedup;
use shaclds::shacl::ValidationReport;
use shaclds::Term;
use shaclds_bench::era::{self, shapes};
use shaclds_bench::generator::{DivergencePlan, GeneratorConfig, View, ViolationKind};
use shaclds_bench::{generate, run_once, shapes_for, BenchConfigId, Generated};

fn run(g: &Generated, id: BenchConfigId) -> ValidationReport {
    let s = shapes_for(id, &g.operators).unwrap();
    run_once(id, &g.dataset, &s, 1).unwrap().report
}

fn by_shape(report: &ValidationReport) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for r in &report.results {
        *out.entry(r.source_shape.as_iri().unwrap().to_owned()).or_default() += 1;
    }
    out
}

fn by_shape_and_graph(report: &ValidationReport) -> BTreeMap<(String, Option<String>), usize> {
    let mut out = BTreeMap::new();
    for r in &report.results {
        let graph = r.focus_graph.as_ref().map(|g| g.as_iri().unwrap().to_owned());
        *out.entry((r.source_shape.as_iri().unwrap().to_owned(), graph)).or_default() += 1;
    }
    out
}

fn add<K: Ord + Clone>(a: &BTreeMap<K, usize>, b: &BTreeMap<K, usize>) -> BTreeMap<K, usize> {
    let mut out = a.clone();
    for (k, n) in b {
        *out.entry(k.clone()).or_default() += n;
    }
    out
}

fn all_kinds(seed: u64, operators: usize) -> GeneratorConfig {
    let mut c = GeneratorConfig::new(seed, operators, 150);
    for (i, kind) in ViolationKind::ALL.into_iter().enumerate() {
        c = c.with_violation(kind, 1 + i % 2);
    }
    c.shared_triple_count = 4;
    c
}

#[test]
fn every_configuration_matches_its_view() {
    let mut config = all_kinds(7, 4);
    config.duplicate_versions = true;
    config.divergence = DivergencePlan { missing_reference: true, conflicting_values: true, spoof: false };
    let g = generate(&config).unwrap();
    let t = &g.truth;

    assert_eq!(by_shape(&run(&g, BenchConfigId::ShaclBaseline)), t.shape_counts(View::Merged));
    assert_eq!(by_shape(&run(&g, BenchConfigId::ShaclFull)), t.shape_counts(View::Full));
    assert!(t.total(View::Full) > t.total(View::Merged));
    assert_eq!(by_shape_and_graph(&run(&g, BenchConfigId::DsTarget)), t.entries(View::Target));
    assert_eq!(by_shape(&run(&g, BenchConfigId::DsCombo)), t.shape_counts(View::Combination));
    assert_eq!(
        by_shape_and_graph(&run(&g, BenchConfigId::DsTargetExtra)),
        add(&t.entries(View::Target), &t.entries(View::Extra))
    );
    assert_eq!(
        by_shape(&run(&g, BenchConfigId::DsComboExtra)),
        add(&t.shape_counts(View::Combination), &t.shape_counts(View::Extra))
    );
}

#[test]
fn without_duplicate_versions_full_equals_baseline() {
    let g = generate(&all_kinds(3, 3)).unwrap();
    assert_eq!(g.dataset.graph_names().count(), 7);
    assert_eq!(by_shape(&run(&g, BenchConfigId::ShaclFull)), by_shape(&run(&g, BenchConfigId::ShaclBaseline)));
}

#[test]
fn shared_entities_repeat_per_operator_and_collapse_under_dedup() {
    for copies in [2, 3, 5] {
        let mut config = GeneratorConfig::new(11, 5, 60);
        config.shared_triple_count = 1;
        config.shared_copies = copies;
        let g = generate(&config).unwrap();
        let report = run(&g, BenchConfigId::DsTarget);
        assert_eq!(report.len(), copies);
        let (d, removed) = dedup(&report);
        assert_eq!((d.len(), removed), (1, copies - 1));
        assert_eq!(run(&g, BenchConfigId::ShaclBaseline).len(), 1);
    }
}

#[test]
fn divergence_is_visible_in_one_direction_each() {
    let mut config = GeneratorConfig::new(2, 3, 60);
    config.divergence.missing_reference = true;
    let g = generate(&config).unwrap();
    let target = by_shape_and_graph(&run(&g, BenchConfigId::DsTarget));
    assert_eq!(target.get(&(shapes::SOL_OP_START.to_owned(), Some(g.operators[1].as_iri().unwrap().to_owned()))), Some(&1));
    assert_eq!(by_shape(&run(&g, BenchConfigId::ShaclBaseline)).get(shapes::SOL_OP_START), None);

    let mut config = GeneratorConfig::new(2, 3, 60);
    config.divergence.conflicting_values = true;
    let g = generate(&config).unwrap();
    assert_eq!(by_shape(&run(&g, BenchConfigId::DsTarget)).get(shapes::SOL_NATURE), None);
    assert_eq!(by_shape(&run(&g, BenchConfigId::ShaclBaseline)).get(shapes::SOL_NATURE), Some(&1));
}

#[test]
fn spoofed_membership_is_caught_only_with_pinned_lookups() {
    let mut config = GeneratorConfig::new(4, 3, 60);
    config.divergence.spoof = true;
    let g = generate(&config).unwrap();
    let target = by_shape(&run(&g, BenchConfigId::DsTarget));
    let combo = by_shape(&run(&g, BenchConfigId::DsCombo));
    assert_eq!(target.get(shapes::ETCS), Some(&1));
    assert_eq!(combo.get(shapes::ETCS), None);
    assert_eq!(target, g.truth.shape_counts(View::Target));
    assert_eq!(combo, g.truth.shape_counts(View::Combination));
}

#[test]
fn patterns_select_operator_and_category_graphs() {
    let mut config = GeneratorConfig::new(9, 6, 40);
    config.duplicate_versions = true;
    let g = generate(&config).unwrap();
    let select = |p: &str| -> Vec<Term> {
        let mut ids: Vec<Term> = resolve_focus_graphs(&TargetSpec::Pattern(GraphPattern::new(p).unwrap()), &g.dataset)
            .into_iter()
            .map(|f| f.id)
            .collect();
        ids.sort();
        ids
    };
    let mut ops = g.operators.clone();
    ops.sort();
    assert_eq!(select(era::OPERATOR_PATTERN), ops);
    let mut ont = vec![era::ontology_graph(), era::rinf_ontology_graph(), era::v315_graph("ontology")];
    ont.sort();
    assert_eq!(select(era::ONTOLOGY_PATTERN), ont);
    let mut skos = vec![era::skos_graph(), era::rinf_skos_graph(), era::v315_graph("skos")];
    skos.sort();
    assert_eq!(select(era::SKOS_PATTERN), skos);
    assert_eq!(select(era::SHACL_PATTERN), vec![era::v315_graph("shacl")]);
}
