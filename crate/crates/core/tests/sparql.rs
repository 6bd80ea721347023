use std::borrow::Cow;

use proptest::prelude::*;
use shaclds::ds::EvaluationDataset;
use shaclds::sparql::{evaluate, evaluate_oracle, parse_query, Bindings};
use shaclds::{Dataset, Graph, Term};

const EX: &str = "http://example.org/";

fn ex(local: &str) -> Term {
    Term::iri(&format!("{EX}{local}"))
}

fn graph() -> impl Strategy<Value = Graph> {
    prop::collection::vec((0..4u8, 0..2u8, 0..5u8), 0..25).prop_map(|ts| {
        let mut g = Graph::new();
        for (s, p, o) in ts {
            let object = if o == 4 { Term::integer(i64::from(s)) } else { ex(&format!("n{o}")) };
            g.add(ex(&format!("n{s}")), ex(&format!("p{p}")), object);
        }
        g
    })
}

fn term_pattern(var_bias: bool) -> impl Strategy<Value = String> {
    let var = prop_oneof![Just("?a"), Just("?b"), Just("?c")].prop_map(str::to_owned);
    let node = (0..4u8).prop_map(|i| format!("ex:n{i}"));
    if var_bias {
        prop_oneof![3 => var, 1 => node].boxed()
    } else {
        prop_oneof![1 => var, 1 => node].boxed()
    }
}

/// A basic graph pattern whose first triple binds `?a`.
fn bgp() -> impl Strategy<Value = String> {
    let first = (0..2u8, term_pattern(false)).prop_map(|(p, o)| format!("?a ex:p{p} {o} ."));
    let rest = prop::collection::vec((term_pattern(true), 0..2u8, term_pattern(true)), 0..3)
        .prop_map(|ts| ts.into_iter().map(|(s, p, o)| format!("{s} ex:p{p} {o} .")).collect::<Vec<_>>().join(" "));
    (first, rest).prop_map(|(f, r)| format!("PREFIX ex: <{EX}>\nSELECT * WHERE {{ {f} {r} }}"))
}

fn eds(d: &Dataset) -> EvaluationDataset<'_> {
    EvaluationDataset::new(d, Cow::Borrowed(d.default_graph()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn pre_binding_equals_post_filter(g in graph(), text in bgp(), value in 0..4u8) {
        let mut d = Dataset::new();
        *d.default_graph_mut() = g;
        let q = parse_query(&text).unwrap();
        let v = ex(&format!("n{value}"));
        let bound = Bindings::from([("a".to_owned(), v.clone())]);
        let pre = evaluate(&q, &eds(&d), &bound);
        let all = evaluate(&q, &eds(&d), &Bindings::new());
        let col = all.column("a").unwrap();
        let mut post: Vec<Vec<Option<Term>>> = all.canonical().into_iter().filter(|r| r[col].as_ref() == Some(&v)).collect();
        post.sort();
        prop_assert_eq!(pre.canonical(), post);
        prop_assert_eq!(pre.canonical(), evaluate_oracle(&q, &eds(&d), &bound).unwrap().canonical());
    }
}

const QUERIES: &[&str] = &[
    "SELECT ?s WHERE { ?s ?p ?o . }",
    "PREFIX ex: <http://example.org/> SELECT DISTINCT ?s (str(?o) AS ?t) WHERE { ?s ex:p ?o . FILTER (?o > 3 && !bound(?x)) }",
    "SELECT * WHERE { { ?s <http://example.org/p> ?o } UNION { GRAPH ?g { ?s ?p ?o } } }",
    "SELECT $this WHERE { $this <http://example.org/p> ?o . FILTER NOT EXISTS { GRAPH <http://example.org/g> { ?o a ?c } } }",
    "SELECT ?s WHERE { ?s ?p \"x\\\"y\"@en . FILTER (regex(str(?s), \"^a.*\", \"i\") || datatype(?s) = <http://www.w3.org/2001/XMLSchema#string>) }",
    "SELECT ?s WHERE { ?s ?p ?o . FILTER EXISTS { ?o ?q 1.5 } FILTER (lang(?o) != \"de\") }",
];

#[test]
fn printed_queries_parse_back_unchanged() {
    for text in QUERIES {
        let q = parse_query(text).unwrap();
        let printed = q.to_string();
        let back = parse_query(&printed).unwrap_or_else(|e| panic!("{printed}\n{e}"));
        assert_eq!(back, q, "{printed}");
        assert_eq!(back.to_string(), printed);
    }
}
