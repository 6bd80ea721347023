use proptest::prelude::*;
use shaclds::io::{parse_nquads, parse_trig, parse_turtle, write_nquads, write_trig, PrefixMap};
use shaclds::model::iso::isomorphic;
use shaclds::vocab::xsd;
use shaclds::{Dataset, Literal, Quad, Term, Triple};

const EX: &str = "http://example.org/";

fn iri() -> impl Strategy<Value = Term> {
    prop_oneof![
        (0..8u8).prop_map(|i| Term::iri(&format!("{EX}n{i}"))),
        "[a-zA-Z0-9_.~-]{1,8}".prop_map(|s| Term::iri(&format!("{EX}x/{s}"))),
        "[a-z]{1,4}".prop_map(|s| Term::iri(&format!("urn:{s}:é{s}"))),
    ]
}

fn literal() -> impl Strategy<Value = Term> {
    let text = prop_oneof!["[ -~]{0,12}", "\\PC{0,6}", Just("line\nbreak\t\"q\" \\ end".to_owned())];
    prop_oneof![
        text.clone().prop_map(|s| Term::string(&s)),
        (text.clone(), "[a-z]{2}(-[A-Z]{2})?").prop_map(|(s, l)| Term::Literal(Literal::lang(s.as_str(), &l))),
        (-1000i64..1000).prop_map(Term::integer),
        any::<bool>().prop_map(Term::boolean),
        "-?[0-9]{1,3}\\.[0-9]{1,3}".prop_map(|s| Term::typed(&s, xsd::DECIMAL)),
        text.clone().prop_map(|s| Term::typed(&s, xsd::INTEGER)),
        (text, iri()).prop_map(|(s, d)| Term::typed(&s, d.as_iri().unwrap())),
    ]
}

fn blank() -> impl Strategy<Value = Term> {
    (0..6u8).prop_map(|i| Term::blank(&format!("b{i}")))
}

fn quad() -> impl Strategy<Value = Quad> {
    let subject = prop_oneof![3 => iri(), 1 => blank()];
    let object = prop_oneof![2 => iri(), 1 => blank(), 3 => literal()];
    let graph = prop_oneof![1 => Just(None), 2 => iri().prop_map(Some)];
    (subject, iri(), object, graph).prop_map(|(s, p, o, g)| Quad::new(Triple::new(s, p, o), g))
}

fn dataset(max: usize) -> impl Strategy<Value = Dataset> {
    prop::collection::vec(quad(), 0..=max).prop_map(|quads| {
        let mut d = Dataset::new();
        for q in quads {
            d.insert(q);
        }
        d
    })
}

fn prefixes() -> PrefixMap {
    PrefixMap::from([("ex".to_owned(), EX.to_owned()), ("xsd".to_owned(), xsd::INTEGER.trim_end_matches("integer").to_owned())])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nquads_round_trip(d in dataset(500)) {
        let text = write_nquads(&d);
        let back = parse_nquads(&text).unwrap().dataset;
        prop_assert!(isomorphic(&d, &back), "{text}");
        prop_assert_eq!(back.len(), d.len());
    }

    #[test]
    fn trig_round_trip(d in dataset(500)) {
        let text = write_trig(&d, &prefixes());
        let back = parse_trig(&text).unwrap().dataset;
        prop_assert!(isomorphic(&d, &back), "{text}");
    }

    #[test]
    fn nquads_and_trig_agree(d in dataset(100)) {
        let a = parse_nquads(&write_nquads(&d)).unwrap().dataset;
        let b = parse_trig(&write_trig(&d, &PrefixMap::new())).unwrap().dataset;
        prop_assert!(isomorphic(&a, &b));
    }

    #[test]
    fn parsers_are_total_on_mutated_input(d in dataset(20), cut in any::<prop::sample::Index>(), junk in "[ -~\n]{0,4}") {
        for text in [write_nquads(&d), write_trig(&d, &prefixes())] {
            let at = if text.is_empty() { 0 } else { cut.index(text.len()) };
            let at = (0..=at).rev().find(|i| text.is_char_boundary(*i)).unwrap();
            let mutated = format!("{}{junk}{}", &text[..at], &text[at..]);
            let _ = parse_nquads(&mutated);
            let _ = parse_trig(&mutated);
            let _ = parse_turtle(&mutated, None);
        }
    }

    #[test]
    fn parsers_are_total_on_arbitrary_input(text in "\\PC{0,64}") {
        let _ = parse_nquads(&text);
        let _ = parse_trig(&text);
        let _ = parse_turtle(&text, None);
    }

    #[test]
    fn errors_report_the_offending_line(valid in 0usize..30, garbage in prop_oneof![Just("<broken"), Just("\"open"), Just("<a> <b> ."), Just("@@")]) {
        let line = format!("<{EX}s> <{EX}p> <{EX}o> .");
        let mut text = vec![line; valid];
        text.push(garbage.to_owned());
        let text = text.join("\n");
        let e = parse_nquads(&text).unwrap_err();
        prop_assert_eq!(e.line, valid + 1);
        let e = parse_trig(&text).unwrap_err();
        prop_assert_eq!(e.line, valid + 1);
    }
}

#[test]
fn first_column_is_one() {
    let e = parse_nquads("@").unwrap_err();
    assert_eq!((e.line, e.column), (1, 1));
}
