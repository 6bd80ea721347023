use std::collections::BTreeSet;

use rustc_hash::FxHashSet;

use crate::ds::EvaluationDataset;
use crate::model::lexical::is_well_formed;
use crate::model::{Graph, Term};
use crate::sparql::Bindings;
use crate::vocab::{rdf, rdfs, sh};

use super::{Constraint, PropertyPath, Shape, ShapeId, ShapesGraph, Target, ValidationReport, ValidationResult};

/// Focus nodes of `shape` in `data`, in term order.
pub fn resolve_targets(shape: &Shape, data: &Graph) -> BTreeSet<Term> {
    let mut out = BTreeSet::new();
    for target in &shape.targets {
        match target {
            Target::Node(n) => {
                out.insert(n.clone());
            }
            Target::Class(c) => {
                let ty = Term::iri(rdf::TYPE);
                for class in subclasses(c, data) {
                    out.extend(data.subjects(&ty, &class).cloned());
                }
            }
            Target::SubjectsOf(p) => out.extend(data.matching(None, Some(p), None).map(|t| t.subject.clone())),
            Target::ObjectsOf(p) => out.extend(data.matching(None, Some(p), None).map(|t| t.object.clone())),
        }
    }
    out
}

/// `class` and every class that reaches it through `rdfs:subClassOf`.
fn subclasses(class: &Term, data: &Graph) -> Vec<Term> {
    let sub = Term::iri(rdfs::SUB_CLASS_OF);
    let mut seen = FxHashSet::default();
    let mut stack = vec![class.clone()];
    let mut out = Vec::new();
    while let Some(c) = stack.pop() {
        if seen.insert(c.clone()) {
            stack.extend(data.subjects(&sub, &c).cloned());
            out.push(c);
        }
    }
    out
}

/// SHACL instance check: `value` has an `rdf:type` that is `class` or a
/// transitive `rdfs:subClassOf` of it, as stated in `data`.
pub fn check_class(value: &Term, class: &Term, data: &Graph) -> bool {
    let (ty, sub) = (Term::iri(rdf::TYPE), Term::iri(rdfs::SUB_CLASS_OF));
    let mut seen = FxHashSet::default();
    let mut stack: Vec<&Term> = data.objects(value, &ty).collect();
    while let Some(c) = stack.pop() {
        if c == class {
            return true;
        }
        if seen.insert(c) {
            stack.extend(data.objects(c, &sub));
        }
    }
    false
}

/// Validates `data` against every shape with targets. SPARQL constraints run
/// against `eds`; when `eds` is `None` they see `data` as the default graph
/// and no named graphs.
pub fn validate_graph(shapes: &ShapesGraph, data: &Graph, eds: Option<&EvaluationDataset<'_>>) -> ValidationReport {
    let local;
    let eds = match eds {
        Some(e) => e,
        None => {
            local = EvaluationDataset::single(data);
            &local
        }
    };
    let v = Validator { shapes, data, eds };
    let mut results = Vec::new();
    for (i, shape) in shapes.shapes().iter().enumerate() {
        if shape.deactivated || shape.targets.is_empty() {
            continue;
        }
        for focus in resolve_targets(shape, data) {
            v.validate(ShapeId(i), &focus, &mut results);
        }
    }
    ValidationReport::new(results)
}

struct Validator<'a, 'd> {
    shapes: &'a ShapesGraph,
    data: &'a Graph,
    eds: &'a EvaluationDataset<'d>,
}

impl Validator<'_, '_> {
    fn value_nodes(&self, shape: &Shape, focus: &Term) -> BTreeSet<Term> {
        match &shape.path {
            None => BTreeSet::from([focus.clone()]),
            Some(PropertyPath::Predicate(p)) => self.data.objects(focus, p).cloned().collect(),
            Some(PropertyPath::Inverse(p)) => self.data.subjects(p, focus).cloned().collect(),
        }
    }

    fn conforms(&self, id: ShapeId, node: &Term) -> bool {
        let mut tmp = Vec::new();
        self.validate(id, node, &mut tmp);
        tmp.is_empty()
    }

    fn validate(&self, id: ShapeId, focus: &Term, out: &mut Vec<ValidationResult>) {
        let shape = self.shapes.get(id);
        if shape.deactivated {
            return;
        }
        let values = self.value_nodes(shape, focus);
        let result = |value: Option<&Term>, component: &str| ValidationResult {
            source_shapes_graph: None,
            focus_graph: None,
            source_shape: shape.id.clone(),
            focus_node: focus.clone(),
            path: shape.path.clone(),
            value: value.cloned(),
            source_constraint_component: Term::iri(component),
            severity: shape.severity.clone(),
            message: shape.message.clone(),
        };
        for c in &shape.constraints {
            match c {
                Constraint::Datatype(dt) => {
                    let dt = dt.as_iri().unwrap_or_default();
                    for v in &values {
                        let ok = v.as_literal().is_some_and(|l| l.datatype() == dt && is_well_formed(dt, l.lexical()));
                        if !ok {
                            out.push(result(Some(v), sh::DATATYPE_COMPONENT));
                        }
                    }
                }
                Constraint::Pattern(p) => {
                    for v in &values {
                        if !v.lexical_str().is_some_and(|s| p.regex.is_match(s)) {
                            out.push(result(Some(v), sh::PATTERN_COMPONENT));
                        }
                    }
                }
                Constraint::MinCount(n) => {
                    if (values.len() as u64) < *n {
                        out.push(result(None, sh::MIN_COUNT_COMPONENT));
                    }
                }
                Constraint::MaxCount(n) => {
                    if values.len() as u64 > *n {
                        out.push(result(None, sh::MAX_COUNT_COMPONENT));
                    }
                }
                Constraint::Class(class) => {
                    for v in &values {
                        if !check_class(v, class, self.data) {
                            out.push(result(Some(v), sh::CLASS_COMPONENT));
                        }
                    }
                }
                Constraint::NodeKind(kind) => {
                    for v in &values {
                        if !kind.matches(v) {
                            out.push(result(Some(v), sh::NODE_KIND_COMPONENT));
                        }
                    }
                }
                Constraint::In(list) => {
                    for v in &values {
                        if !list.contains(v) {
                            out.push(result(Some(v), sh::IN_COMPONENT));
                        }
                    }
                }
                Constraint::Or(members) => {
                    for v in &values {
                        if !members.iter().any(|m| self.conforms(*m, v)) {
                            out.push(result(Some(v), sh::OR_COMPONENT));
                        }
                    }
                }
                Constraint::Not(s) => {
                    for v in &values {
                        if self.conforms(*s, v) {
                            out.push(result(Some(v), sh::NOT_COMPONENT));
                        }
                    }
                }
                Constraint::Node(s) => {
                    for v in &values {
                        if !self.conforms(*s, v) {
                            out.push(result(Some(v), sh::NODE_COMPONENT));
                        }
                    }
                }
                Constraint::Property(p) => {
                    for v in &values {
                        self.validate(*p, v, out);
                    }
                }
                Constraint::Sparql(c) => {
                    if c.deactivated {
                        continue;
                    }
                    let bindings = Bindings::from([("this".to_owned(), focus.clone())]);
                    let solutions = c.prepared.evaluate(self.eds, &bindings);
                    for row in 0..solutions.len() {
                        let path = match solutions.get(row, "path") {
                            Some(p) if p.is_iri() => Some(PropertyPath::Predicate(p.clone())),
                            _ => shape.path.clone(),
                        };
                        out.push(ValidationResult {
                            focus_node: solutions.get(row, "this").unwrap_or(focus).clone(),
                            path,
                            value: solutions.get(row, "value").cloned(),
                            message: c.message.clone().or_else(|| shape.message.clone()),
                            ..result(None, sh::SPARQL_COMPONENT)
                        });
                    }
                }
            }
        }
    }
}
