use std::borrow::Cow;

use shaclds::ds::EvaluationDataset;
use shaclds::io::parse_turtle;
use shaclds::shacl::{load_shapes, validate_graph};
use shaclds::sparql::{evaluate, evaluate_oracle, parse_query};
use shaclds_bench::shaclgen::{brute_force, report_keys, shacl_case};
use shaclds_bench::sparqlgen::sparql_case;

#[test]
fn sparql_engine_matches_reference_evaluator() {
    let mut nonempty = 0;
    for seed in 0..200 {
        let case = sparql_case(seed).unwrap();
        let query = parse_query(&case.text).unwrap();
        let eds = EvaluationDataset::new(&case.dataset, Cow::Borrowed(case.dataset.default_graph()));
        let got = evaluate(&query, &eds, &case.pre_bound);
        let want = evaluate_oracle(&query, &eds, &case.pre_bound).unwrap();
        assert_eq!(got.canonical(), want.canonical(), "seed {seed}\n{}", case.text);
        nonempty += usize::from(!got.is_empty());
    }
    assert!(nonempty >= 50, "only {nonempty} queries had solutions");
}

#[test]
fn shacl_engine_matches_brute_force() {
    let mut nonempty = 0;
    for seed in 0..100 {
        let case = shacl_case(seed);
        let shapes = load_shapes(&parse_turtle(&case.turtle, None).unwrap().graph).unwrap();
        let report = validate_graph(&shapes, &case.data, None);
        let want = brute_force(&case);
        nonempty += usize::from(!want.is_empty());
        let got = report_keys(&report);
        if got != want {
            let extra: Vec<_> = got.iter().filter(|k| !want.contains(k)).collect();
            let missing: Vec<_> = want.iter().filter(|k| !got.contains(k)).collect();
            panic!("seed {seed}: engine-only {extra:?}, checker-only {missing:?}, counts {} vs {}\n{}", got.len(), want.len(), case.turtle);
        }
    }
    assert!(nonempty >= 50, "only {nonempty} cases produced results");
}
