//! Random shapes graphs over random data graphs, with a brute-force checker
//! that evaluates each constraint component straight from its definition by
//! scanning every triple. The checker works from the generator's own shape
//! description, not from the loaded shapes graph.

use std::collections::BTreeSet;
use std::fmt::Write;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use regex::RegexBuilder;
use shaclds::shacl::{PropertyPath, ValidationReport};
use shaclds::vocab::{rdf, rdfs, sh, xsd};
use shaclds::{Graph, Literal, Term};

pub const EX: &str = "http://example.org/";

fn ex(local: &str) -> Term {
    Term::iri(&format!("{EX}{local}"))
}

#[derive(Clone, Debug)]
pub enum TargetDef {
    Class(Term),
    Node(Term),
    SubjectsOf(Term),
    ObjectsOf(Term),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PathDef {
    Predicate(Term),
    Inverse(Term),
}

#[derive(Clone, Debug)]
pub enum ConstraintDef {
    Datatype(String),
    Pattern { pattern: String, ignore_case: bool },
    MinCount(usize),
    MaxCount(usize),
    Class(Term),
    NodeKind(&'static str),
    In(Vec<Term>),
    Or(Vec<usize>),
    Not(usize),
    Node(usize),
    Property(usize),
}

#[derive(Clone, Debug)]
pub struct ShapeDef {
    pub id: Term,
    pub targets: Vec<TargetDef>,
    pub path: Option<PathDef>,
    pub constraints: Vec<ConstraintDef>,
}

#[derive(Clone, Debug)]
pub struct ShapeCase {
    pub shapes: Vec<ShapeDef>,
    pub turtle: String,
    pub data: Graph,
}

/// A validation result reduced to focus node, path, value, source shape and component.
pub type ResultKey = (Term, Option<PathDef>, Option<Term>, Term, String);

const NODE_KINDS: [&str; 6] =
    [sh::IRI, sh::BLANK_NODE, sh::LITERAL, sh::BLANK_NODE_OR_IRI, sh::BLANK_NODE_OR_LITERAL, sh::IRI_OR_LITERAL];

fn subject(rng: &mut ChaCha8Rng) -> Term {
    if rng.gen_bool(0.15) {
        Term::blank(&format!("b{}", rng.gen_range(0..2)))
    } else {
        ex(&format!("n{}", rng.gen_range(0..6)))
    }
}

fn value(rng: &mut ChaCha8Rng) -> Term {
    match rng.gen_range(0..12) {
        0..=3 => subject(rng),
        4..=6 => Term::integer(rng.gen_range(0..13)),
        7 => Term::string(["a", "ab", "B", "n1"].choose(rng).unwrap()),
        8 => Term::Literal(Literal::lang("a", "en")),
        9 => Term::typed(["1.5", "2"].choose(rng).unwrap(), xsd::DECIMAL),
        10 => Term::typed(["x", "1.5"].choose(rng).unwrap(), xsd::INTEGER),
        _ => ex(&format!("C{}", rng.gen_range(0..3))),
    }
}

fn class(rng: &mut ChaCha8Rng) -> Term {
    ex(&format!("C{}", rng.gen_range(0..3)))
}

fn predicate(rng: &mut ChaCha8Rng) -> Term {
    ex(&format!("p{}", rng.gen_range(0..3)))
}

fn random_data(rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::new();
    for _ in 0..rng.gen_range(10..=30) {
        match rng.gen_range(0..10) {
            0..=2 => g.add(subject(rng), Term::iri(rdf::TYPE), class(rng)),
            3 => g.add(class(rng), Term::iri(rdfs::SUB_CLASS_OF), class(rng)),
            _ => g.add(subject(rng), predicate(rng), value(rng)),
        };
    }
    g
}

fn random_constraint(rng: &mut ChaCha8Rng, has_path: bool, later: &[usize], later_with_path: &[usize]) -> ConstraintDef {
    loop {
        let c = match rng.gen_range(0..11) {
            0 => ConstraintDef::Datatype(
                [xsd::INTEGER, xsd::STRING, xsd::DECIMAL, rdf::LANG_STRING].choose(rng).unwrap().to_string(),
            ),
            1 => ConstraintDef::Pattern {
                pattern: ["^n[0-2]", "a", "^1", "B$", "n1"].choose(rng).unwrap().to_string(),
                ignore_case: rng.gen_bool(0.3),
            },
            2 if has_path => ConstraintDef::MinCount(rng.gen_range(1..=2)),
            3 if has_path => ConstraintDef::MaxCount(rng.gen_range(0..=1)),
            4 => ConstraintDef::Class(class(rng)),
            5 => ConstraintDef::NodeKind(NODE_KINDS.choose(rng).unwrap()),
            // Blank nodes in a list would not denote the data graph's blank nodes.
            6 => ConstraintDef::In((0..rng.gen_range(1..=3)).map(|_| value(rng)).filter(|v| !v.is_blank()).collect()),
            7 if later.len() >= 2 => ConstraintDef::Or(later.choose_multiple(rng, 2).copied().collect()),
            8 if !later.is_empty() => ConstraintDef::Not(*later.choose(rng).unwrap()),
            9 if !later.is_empty() => ConstraintDef::Node(*later.choose(rng).unwrap()),
            10 if !later_with_path.is_empty() => ConstraintDef::Property(*later_with_path.choose(rng).unwrap()),
            _ => continue,
        };
        return c;
    }
}

/// A random shapes graph of 3 to 6 shapes and a random data graph. Shape `i`
/// only references shapes with a larger index, so references never cycle.
pub fn shacl_case(seed: u64) -> ShapeCase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = random_data(&mut rng);
    let n = rng.gen_range(3..=6);
    let mut shapes: Vec<ShapeDef> = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let path = rng.gen_bool(0.5).then(|| {
            let p = predicate(&mut rng);
            if rng.gen_bool(0.25) {
                PathDef::Inverse(p)
            } else {
                PathDef::Predicate(p)
            }
        });
        let later: Vec<usize> = (i + 1..n).collect();
        let later_with_path: Vec<usize> = later.iter().copied().filter(|j| shapes[n - 1 - j].path.is_some()).collect();
        // Repeated constraints would collapse into one triple, and sh:flags
        // belongs to the shape, so it allows a single pattern.
        let mut constraints: Vec<ConstraintDef> = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            let c = random_constraint(&mut rng, path.is_some(), &later, &later_with_path);
            let is_pattern = |d: &ConstraintDef| matches!(d, ConstraintDef::Pattern { .. });
            let clash = constraints.iter().any(|d| format!("{d:?}") == format!("{c:?}") || (is_pattern(d) && is_pattern(&c)));
            if !clash {
                constraints.push(c);
            }
        }
        let mut targets = Vec::new();
        if i < 3 || rng.gen_bool(0.2) {
            for _ in 0..rng.gen_range(1..=2) {
                targets.push(match rng.gen_range(0..4) {
                    0 => TargetDef::Class(class(&mut rng)),
                    1 => TargetDef::Node(subject(&mut rng)),
                    2 => TargetDef::SubjectsOf(predicate(&mut rng)),
                    _ => TargetDef::ObjectsOf(predicate(&mut rng)),
                });
            }
        }
        // Blank target nodes would be renamed by the Turtle parser.
        targets.retain(|t| !matches!(t, TargetDef::Node(n) if n.is_blank()));
        shapes.push(ShapeDef { id: ex(&format!("S{i}")), targets, path, constraints });
    }
    shapes.reverse();
    let turtle = to_turtle(&shapes);
    ShapeCase { shapes, turtle, data }
}

fn term_turtle(t: &Term) -> String {
    t.to_string()
}

fn to_turtle(shapes: &[ShapeDef]) -> String {
    let mut out = String::new();
    for s in shapes {
        let mut lines = Vec::new();
        for t in &s.targets {
            lines.push(match t {
                TargetDef::Class(c) => format!("<{}> {}", sh::TARGET_CLASS, term_turtle(c)),
                TargetDef::Node(n) => format!("<{}> {}", sh::TARGET_NODE, term_turtle(n)),
                TargetDef::SubjectsOf(p) => format!("<{}> {}", sh::TARGET_SUBJECTS_OF, term_turtle(p)),
                TargetDef::ObjectsOf(p) => format!("<{}> {}", sh::TARGET_OBJECTS_OF, term_turtle(p)),
            });
        }
        match &s.path {
            Some(PathDef::Predicate(p)) => lines.push(format!("<{}> {}", sh::PATH, term_turtle(p))),
            Some(PathDef::Inverse(p)) => lines.push(format!("<{}> [ <{}> {} ]", sh::PATH, sh::INVERSE_PATH, term_turtle(p))),
            None => {}
        }
        let shape_ref = |j: &usize| term_turtle(&shapes[*j].id);
        for c in &s.constraints {
            lines.push(match c {
                ConstraintDef::Datatype(dt) => format!("<{}> <{dt}>", sh::DATATYPE),
                ConstraintDef::Pattern { pattern, ignore_case } => {
                    let flags = if *ignore_case { format!(" ; <{}> \"i\"", sh::FLAGS) } else { String::new() };
                    format!("<{}> {}{flags}", sh::PATTERN, term_turtle(&Term::string(pattern)))
                }
                ConstraintDef::MinCount(n) => format!("<{}> {n}", sh::MIN_COUNT),
                ConstraintDef::MaxCount(n) => format!("<{}> {n}", sh::MAX_COUNT),
                ConstraintDef::Class(c) => format!("<{}> {}", sh::CLASS, term_turtle(c)),
                ConstraintDef::NodeKind(k) => format!("<{}> <{k}>", sh::NODE_KIND),
                ConstraintDef::In(list) => {
                    format!("<{}> ( {} )", sh::IN, list.iter().map(term_turtle).collect::<Vec<_>>().join(" "))
                }
                ConstraintDef::Or(members) => {
                    format!("<{}> ( {} )", sh::OR, members.iter().map(shape_ref).collect::<Vec<_>>().join(" "))
                }
                ConstraintDef::Not(j) => format!("<{}> {}", sh::NOT, shape_ref(j)),
                ConstraintDef::Node(j) => format!("<{}> {}", sh::NODE, shape_ref(j)),
                ConstraintDef::Property(j) => format!("<{}> {}", sh::PROPERTY, shape_ref(j)),
            });
        }
        writeln!(out, "{}\n    {} .", term_turtle(&s.id), lines.join(" ;\n    ")).unwrap();
    }
    out
}

/// Expected results by exhaustive evaluation over `case.data`.
pub fn brute_force(case: &ShapeCase) -> Vec<ResultKey> {
    let checker = Checker { shapes: &case.shapes, triples: case.data.iter().cloned().collect() };
    let mut out = Vec::new();
    for (i, s) in case.shapes.iter().enumerate() {
        if s.targets.is_empty() {
            continue;
        }
        for focus in checker.focus_nodes(s) {
            checker.results(i, &focus, &mut out);
        }
    }
    out.sort();
    out
}

/// The engine's report reduced to [`ResultKey`]s, sorted.
pub fn report_keys(report: &ValidationReport) -> Vec<ResultKey> {
    let mut out: Vec<ResultKey> = report
        .results
        .iter()
        .map(|r| {
            let path = r.path.as_ref().map(|p| match p {
                PropertyPath::Predicate(p) => PathDef::Predicate(p.clone()),
                PropertyPath::Inverse(p) => PathDef::Inverse(p.clone()),
            });
            let component = r.source_constraint_component.as_iri().unwrap_or_default().to_owned();
            (r.focus_node.clone(), path, r.value.clone(), r.source_shape.clone(), component)
        })
        .collect();
    out.sort();
    out
}

struct Checker<'a> {
    shapes: &'a [ShapeDef],
    triples: Vec<shaclds::Triple>,
}

impl Checker<'_> {
    fn is(&self, t: &Term, iri: &str) -> bool {
        t.as_iri() == Some(iri)
    }

    /// `class` and all its transitive superclasses.
    fn superclasses(&self, class: &Term) -> BTreeSet<Term> {
        let mut out = BTreeSet::from([class.clone()]);
        loop {
            let before = out.len();
            for t in &self.triples {
                if self.is(&t.predicate, rdfs::SUB_CLASS_OF) && out.contains(&t.subject) {
                    out.insert(t.object.clone());
                }
            }
            if out.len() == before {
                return out;
            }
        }
    }

    fn instance_of(&self, node: &Term, class: &Term) -> bool {
        self.triples
            .iter()
            .any(|t| &t.subject == node && self.is(&t.predicate, rdf::TYPE) && self.superclasses(&t.object).contains(class))
    }

    fn focus_nodes(&self, s: &ShapeDef) -> BTreeSet<Term> {
        let mut out = BTreeSet::new();
        for target in &s.targets {
            match target {
                TargetDef::Node(n) => {
                    out.insert(n.clone());
                }
                TargetDef::Class(c) => {
                    for t in &self.triples {
                        if self.is(&t.predicate, rdf::TYPE) && self.instance_of(&t.subject, c) {
                            out.insert(t.subject.clone());
                        }
                    }
                }
                TargetDef::SubjectsOf(p) => out.extend(self.triples.iter().filter(|t| &t.predicate == p).map(|t| t.subject.clone())),
                TargetDef::ObjectsOf(p) => out.extend(self.triples.iter().filter(|t| &t.predicate == p).map(|t| t.object.clone())),
            }
        }
        out
    }

    fn values(&self, s: &ShapeDef, focus: &Term) -> BTreeSet<Term> {
        match &s.path {
            None => BTreeSet::from([focus.clone()]),
            Some(PathDef::Predicate(p)) => {
                self.triples.iter().filter(|t| &t.subject == focus && &t.predicate == p).map(|t| t.object.clone()).collect()
            }
            Some(PathDef::Inverse(p)) => {
                self.triples.iter().filter(|t| &t.object == focus && &t.predicate == p).map(|t| t.subject.clone()).collect()
            }
        }
    }

    fn conforms(&self, shape: usize, node: &Term) -> bool {
        let mut tmp = Vec::new();
        self.results(shape, node, &mut tmp);
        tmp.is_empty()
    }

    fn results(&self, shape: usize, focus: &Term, out: &mut Vec<ResultKey>) {
        let s = &self.shapes[shape];
        let values = self.values(s, focus);
        let key = |value: Option<&Term>, component: &str| -> ResultKey {
            (focus.clone(), s.path.clone(), value.cloned(), s.id.clone(), component.to_owned())
        };
        for c in &s.constraints {
            match c {
                ConstraintDef::Datatype(dt) => {
                    for v in &values {
                        let ok = v.as_literal().is_some_and(|l| l.datatype() == dt && lexically_valid(dt, l.lexical()));
                        if !ok {
                            out.push(key(Some(v), sh::DATATYPE_COMPONENT));
                        }
                    }
                }
                ConstraintDef::Pattern { pattern, ignore_case } => {
                    let re = RegexBuilder::new(pattern).case_insensitive(*ignore_case).build().expect("valid pattern");
                    for v in &values {
                        let text = match v {
                            Term::Iri(_) => v.as_iri().map(str::to_owned),
                            Term::Literal(l) => Some(l.lexical().to_owned()),
                            Term::Blank(_) => None,
                        };
                        if !text.is_some_and(|t| re.is_match(&t)) {
                            out.push(key(Some(v), sh::PATTERN_COMPONENT));
                        }
                    }
                }
                ConstraintDef::MinCount(n) => {
                    if values.len() < *n {
                        out.push(key(None, sh::MIN_COUNT_COMPONENT));
                    }
                }
                ConstraintDef::MaxCount(n) => {
                    if values.len() > *n {
                        out.push(key(None, sh::MAX_COUNT_COMPONENT));
                    }
                }
                ConstraintDef::Class(class) => {
                    for v in &values {
                        if !self.instance_of(v, class) {
                            out.push(key(Some(v), sh::CLASS_COMPONENT));
                        }
                    }
                }
                ConstraintDef::NodeKind(kind) => {
                    for v in &values {
                        let (iri, blank, lit) = (v.is_iri(), v.is_blank(), v.is_literal());
                        let ok = match *kind {
                            sh::IRI => iri,
                            sh::BLANK_NODE => blank,
                            sh::LITERAL => lit,
                            sh::BLANK_NODE_OR_IRI => blank || iri,
                            sh::BLANK_NODE_OR_LITERAL => blank || lit,
                            _ => iri || lit,
                        };
                        if !ok {
                            out.push(key(Some(v), sh::NODE_KIND_COMPONENT));
                        }
                    }
                }
                ConstraintDef::In(list) => {
                    for v in &values {
                        if !list.contains(v) {
                            out.push(key(Some(v), sh::IN_COMPONENT));
                        }
                    }
                }
                ConstraintDef::Or(members) => {
                    for v in &values {
                        if !members.iter().any(|m| self.conforms(*m, v)) {
                            out.push(key(Some(v), sh::OR_COMPONENT));
                        }
                    }
                }
                ConstraintDef::Not(j) => {
                    for v in &values {
                        if self.conforms(*j, v) {
                            out.push(key(Some(v), sh::NOT_COMPONENT));
                        }
                    }
                }
                ConstraintDef::Node(j) => {
                    for v in &values {
                        if !self.conforms(*j, v) {
                            out.push(key(Some(v), sh::NODE_COMPONENT));
                        }
                    }
                }
                ConstraintDef::Property(j) => {
                    for v in &values {
                        self.results(*j, v, out);
                    }
                }
            }
        }
    }
}

/// Lexical forms of the datatypes the generator uses.
fn lexically_valid(datatype: &str, lexical: &str) -> bool {
    let re = match datatype {
        xsd::INTEGER => r"^[+-]?[0-9]+$",
        xsd::DECIMAL => r"^[+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)$",
        _ => return true,
    };
    regex::Regex::new(re).unwrap().is_match(lexical)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cases_are_deterministic() {
        let a = shacl_case(5);
        let b = shacl_case(5);
        assert_eq!(a.turtle, b.turtle);
        assert_eq!(brute_force(&a), brute_force(&b));
    }

    #[test]
    fn checker_on_a_hand_built_case() {
        let mut data = Graph::new();
        data.add(ex("x"), Term::iri(rdf::TYPE), ex("C1"));
        data.add(ex("C1"), Term::iri(rdfs::SUB_CLASS_OF), ex("C0"));
        data.add(ex("x"), ex("p0"), Term::integer(3));
        data.add(ex("x"), ex("p0"), Term::string("a"));
        let shapes = vec![ShapeDef {
            id: ex("S0"),
            targets: vec![TargetDef::Class(ex("C0"))],
            path: Some(PathDef::Predicate(ex("p0"))),
            constraints: vec![ConstraintDef::MaxCount(1), ConstraintDef::Datatype(xsd::INTEGER.into())],
        }];
        let case = ShapeCase { turtle: to_turtle(&shapes), shapes, data };
        let got = brute_force(&case);
        assert_eq!(got.len(), 2);
        assert_eq!(got.iter().filter(|k| k.4 == sh::MAX_COUNT_COMPONENT).count(), 1);
        assert!(got.iter().any(|k| k.2 == Some(Term::string("a"))));
    }
}
