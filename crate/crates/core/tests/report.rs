use std::collections::BTreeSet;

use proptest::prelude::*;
use shaclds::io::{read_report, serialize_report};
use shaclds::report::{dedup, group_counts, DedupKey};
use shaclds::shacl::{PropertyPath, ValidationReport, ValidationResult};
use shaclds::vocab::sh;
use shaclds::{Literal, Term};

const EX: &str = "http://example.org/";

fn ex(local: String) -> Term {
    Term::iri(&format!("{EX}{local}"))
}

fn result() -> impl Strategy<Value = ValidationResult> {
    let node = prop_oneof!["n[0-3]".prop_map(ex), "b[0-2]".prop_map(|l| Term::blank(&l))];
    let path = prop_oneof![
        Just(None),
        "p[0-2]".prop_map(|p| Some(PropertyPath::Predicate(ex(p)))),
        "p[0-2]".prop_map(|p| Some(PropertyPath::Inverse(ex(p)))),
    ];
    let value = prop_oneof![Just(None), "n[0-3]".prop_map(|n| Some(ex(n))), (0i64..5).prop_map(|i| Some(Term::integer(i)))];
    let component = prop_oneof![Just(sh::MIN_COUNT_COMPONENT), Just(sh::DATATYPE_COMPONENT), Just(sh::SPARQL_COMPONENT)];
    let message = prop_oneof![
        Just(None),
        "[a-z \"]{1,8}".prop_map(|m| Some(Term::string(&m))),
        "[a-z]{1,8}".prop_map(|m| Some(Term::Literal(Literal::lang(m.as_str(), "en")))),
    ];
    let graph = prop_oneof![Just(None), "g[0-2]".prop_map(|g| Some(ex(g)))];
    (node, path, value, "S[0-3]", component, message, graph).prop_map(|(focus, path, value, shape, component, message, graph)| {
        ValidationResult {
            source_shapes_graph: graph.as_ref().map(|_| ex("sg".into())),
            focus_graph: graph,
            source_shape: ex(shape),
            focus_node: focus,
            path,
            value,
            source_constraint_component: Term::iri(component),
            severity: Term::iri(sh::VIOLATION),
            message,
        }
    })
}

fn report(max: usize) -> impl Strategy<Value = ValidationReport> {
    prop::collection::vec(result(), 0..=max).prop_map(ValidationReport::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn serialization_is_a_fixed_point(r in report(50)) {
        let text = serialize_report(&r);
        let back = read_report(&text).unwrap();
        prop_assert_eq!(&back, &r);
        prop_assert_eq!(serialize_report(&back), text);
    }

    #[test]
    fn dedup_invariants(r in report(50)) {
        let (d, removed) = dedup(&r);
        prop_assert_eq!(d.len(), r.len() - removed);
        let keys = |r: &ValidationReport| r.results.iter().map(DedupKey::from).collect::<BTreeSet<_>>();
        prop_assert_eq!(keys(&d), keys(&r));
        prop_assert_eq!(d.len(), keys(&r).len());
        prop_assert_eq!(dedup(&d), (d.clone(), 0));
        prop_assert_eq!(group_counts(&r).deduped_total, d.len());
    }

    #[test]
    fn k_copies_collapse_to_one(r in result(), k in 1usize..6) {
        let copies: Vec<ValidationResult> = (0..k)
            .map(|i| ValidationResult { focus_graph: Some(ex(format!("op{i}"))), ..r.clone() })
            .collect();
        let (d, removed) = dedup(&ValidationReport::new(copies));
        prop_assert_eq!((d.len(), removed), (1, k - 1));
    }
}
