use std::collections::BTreeSet;
use std::fmt;

use regex::Regex;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::model::lexical::{is_integer_type, is_well_formed};
use crate::model::{Graph, Term};
use crate::sparql::{parse_query, PreparedQuery, Query};
use crate::vocab::{rdf, sh, SH};

use super::PropertyPath;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("shape {shape}: {message}")]
    Malformed { shape: Term, message: String },
    #[error("shape {shape}: unsupported path; only a predicate or sh:inversePath of a predicate is supported")]
    UnsupportedPath { shape: Term },
    #[error("shape reference cycle through {0}")]
    ReferenceCycle(Term),
}

/// A non-fatal remark produced while loading shapes (ignored parameters).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeDiagnostic {
    pub shape: Term,
    pub message: String,
}

impl fmt::Display for ShapeDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.shape, self.message)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShapeId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Class(Term),
    Node(Term),
    SubjectsOf(Term),
    ObjectsOf(Term),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Iri,
    BlankNode,
    Literal,
    BlankNodeOrIri,
    BlankNodeOrLiteral,
    IriOrLiteral,
}

impl NodeKind {
    fn from_iri(t: &Term) -> Option<Self> {
        Some(match t.as_iri()? {
            sh::IRI => NodeKind::Iri,
            sh::BLANK_NODE => NodeKind::BlankNode,
            sh::LITERAL => NodeKind::Literal,
            sh::BLANK_NODE_OR_IRI => NodeKind::BlankNodeOrIri,
            sh::BLANK_NODE_OR_LITERAL => NodeKind::BlankNodeOrLiteral,
            sh::IRI_OR_LITERAL => NodeKind::IriOrLiteral,
            _ => return None,
        })
    }

    pub fn matches(self, t: &Term) -> bool {
        match self {
            NodeKind::Iri => t.is_iri(),
            NodeKind::BlankNode => t.is_blank(),
            NodeKind::Literal => t.is_literal(),
            NodeKind::BlankNodeOrIri => !t.is_literal(),
            NodeKind::BlankNodeOrLiteral => !t.is_iri(),
            NodeKind::IriOrLiteral => !t.is_blank(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PatternConstraint {
    pub pattern: String,
    pub flags: String,
    pub regex: Regex,
}

#[derive(Debug, Clone)]
pub struct SparqlConstraint {
    pub node: Term,
    pub select: String,
    pub query: Query,
    pub prepared: PreparedQuery,
    pub message: Option<Term>,
    pub deactivated: bool,
}

#[derive(Debug, Clone)]
pub enum Constraint {
    Datatype(Term),
    Pattern(PatternConstraint),
    MinCount(u64),
    MaxCount(u64),
    Class(Term),
    NodeKind(NodeKind),
    In(Vec<Term>),
    Or(Vec<ShapeId>),
    Not(ShapeId),
    Node(ShapeId),
    Property(ShapeId),
    Sparql(Box<SparqlConstraint>),
}

impl Constraint {
    fn references(&self) -> Vec<ShapeId> {
        match self {
            Constraint::Or(ids) => ids.clone(),
            Constraint::Not(id) | Constraint::Node(id) | Constraint::Property(id) => vec![*id],
            _ => Vec::new(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Shape {
    pub id: Term,
    /// Present for property shapes.
    pub path: Option<PropertyPath>,
    pub targets: Vec<Target>,
    pub constraints: Vec<Constraint>,
    pub severity: Term,
    pub message: Option<Term>,
    pub deactivated: bool,
}

impl Shape {
    pub fn is_property_shape(&self) -> bool {
        self.path.is_some()
    }
}

/// The shapes of one shapes graph, in term order, with cross references resolved.
#[derive(Debug, Clone, Default)]
pub struct ShapesGraph {
    shapes: Vec<Shape>,
    index: FxHashMap<Term, ShapeId>,
    diagnostics: Vec<ShapeDiagnostic>,
}

impl ShapesGraph {
    pub fn shapes(&self) -> &[Shape] {
        &self.shapes
    }

    pub fn get(&self, id: ShapeId) -> &Shape {
        &self.shapes[id.0]
    }

    pub fn id_of(&self, node: &Term) -> Option<ShapeId> {
        self.index.get(node).copied()
    }

    pub fn shape(&self, node: &Term) -> Option<&Shape> {
        self.id_of(node).map(|id| self.get(id))
    }

    pub fn len(&self) -> usize {
        self.shapes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    pub fn diagnostics(&self) -> &[ShapeDiagnostic] {
        &self.diagnostics
    }

    pub fn has_sparql(&self) -> bool {
        self.shapes.iter().any(|s| s.constraints.iter().any(|c| matches!(c, Constraint::Sparql(_))))
    }
}

const TARGET_PREDICATES: &[&str] = &[sh::TARGET_CLASS, sh::TARGET_NODE, sh::TARGET_SUBJECTS_OF, sh::TARGET_OBJECTS_OF];

/// `sh:` predicates that carry no constraint and are accepted silently.
const PASSIVE_PREDICATES: &[&str] = &[
    sh::TARGET_CLASS,
    sh::TARGET_NODE,
    sh::TARGET_SUBJECTS_OF,
    sh::TARGET_OBJECTS_OF,
    sh::PATH,
    sh::FLAGS,
    sh::SEVERITY,
    sh::MESSAGE,
    sh::DEACTIVATED,
    sh::NAME,
    sh::DESCRIPTION,
    sh::ORDER,
    sh::GROUP,
    sh::DEFAULT_VALUE,
];

/// Loads every shape in `graph`: explicitly typed node and property shapes,
/// subjects of targets or `sh:path`, and nodes referenced through
/// `sh:property`, `sh:node`, `sh:not` or `sh:or`.
pub fn load_shapes(graph: &Graph) -> Result<ShapesGraph, ShapeError> {
    let nodes = collect_shape_nodes(graph)?;
    let index: FxHashMap<Term, ShapeId> = nodes.iter().enumerate().map(|(i, t)| (t.clone(), ShapeId(i))).collect();
    let mut diagnostics = Vec::new();
    let mut shapes = Vec::with_capacity(nodes.len());
    for node in &nodes {
        shapes.push(build_shape(graph, node, &index, &mut diagnostics)?);
    }
    check_cycles(&shapes)?;
    Ok(ShapesGraph { shapes, index, diagnostics })
}

fn collect_shape_nodes(g: &Graph) -> Result<BTreeSet<Term>, ShapeError> {
    let mut nodes = BTreeSet::new();
    let ty = Term::iri(rdf::TYPE);
    for class in [sh::NODE_SHAPE, sh::PROPERTY_SHAPE] {
        nodes.extend(g.subjects(&ty, &Term::iri(class)).cloned());
    }
    for p in TARGET_PREDICATES.iter().chain([&sh::PATH]) {
        nodes.extend(g.matching(None, Some(&Term::iri(p)), None).map(|t| t.subject.clone()));
    }
    for p in [sh::PROPERTY, sh::NODE, sh::NOT] {
        nodes.extend(g.matching(None, Some(&Term::iri(p)), None).map(|t| t.object.clone()));
    }
    for t in g.matching(None, Some(&Term::iri(sh::OR)), None) {
        let members = read_list(g, &t.object).map_err(|message| ShapeError::Malformed { shape: t.subject.clone(), message })?;
        nodes.extend(members);
    }
    if let Some(lit) = nodes.iter().find(|n| n.is_literal()) {
        return Err(ShapeError::Malformed { shape: lit.clone(), message: "a literal cannot be a shape".into() });
    }
    Ok(nodes)
}

/// Members of an RDF collection starting at `head`.
pub(crate) fn read_list(g: &Graph, head: &Term) -> Result<Vec<Term>, String> {
    let (first, rest, nil) = (Term::iri(rdf::FIRST), Term::iri(rdf::REST), Term::iri(rdf::NIL));
    let mut out = Vec::new();
    let mut seen = FxHashSet::default();
    let mut node = head.clone();
    while node != nil {
        if !seen.insert(node.clone()) {
            return Err(format!("list at {head} is cyclic"));
        }
        let firsts: Vec<&Term> = g.objects(&node, &first).collect();
        let rests: Vec<&Term> = g.objects(&node, &rest).collect();
        if firsts.len() != 1 || rests.len() != 1 {
            return Err(format!("{node} is not a well-formed list node"));
        }
        out.push(firsts[0].clone());
        node = rests[0].clone();
    }
    Ok(out)
}

fn build_shape(
    g: &Graph,
    node: &Term,
    index: &FxHashMap<Term, ShapeId>,
    diagnostics: &mut Vec<ShapeDiagnostic>,
) -> Result<Shape, ShapeError> {
    let malformed = |message: String| ShapeError::Malformed { shape: node.clone(), message };
    let value = |p: &str| g.object(node, &Term::iri(p)).cloned();
    let mut triples: Vec<_> = g.matching(Some(node), None, None).collect();
    triples.sort();

    let path = match g.objects(node, &Term::iri(sh::PATH)).collect::<Vec<_>>().as_slice() {
        [] => None,
        [p] => Some(parse_path(g, node, p)?),
        _ => return Err(malformed("more than one sh:path".into())),
    };
    let severity = match value(sh::SEVERITY) {
        None => Term::iri(sh::VIOLATION),
        Some(t) if t.is_iri() => t,
        Some(t) => return Err(malformed(format!("sh:severity {t} is not an IRI"))),
    };
    let message = g.objects(node, &Term::iri(sh::MESSAGE)).min().cloned();
    let deactivated = value(sh::DEACTIVATED).is_some_and(|t| is_true(&t));
    let shape_ref = |t: &Term| -> Result<ShapeId, ShapeError> {
        index.get(t).copied().ok_or_else(|| malformed(format!("{t} is not a shape")))
    };

    let mut targets = Vec::new();
    let mut constraints = Vec::new();
    for t in triples {
        let Some(p) = t.predicate.as_iri() else { continue };
        let o = &t.object;
        match p {
            sh::TARGET_CLASS => targets.push(Target::Class(o.clone())),
            sh::TARGET_NODE => targets.push(Target::Node(o.clone())),
            sh::TARGET_SUBJECTS_OF => targets.push(Target::SubjectsOf(o.clone())),
            sh::TARGET_OBJECTS_OF => targets.push(Target::ObjectsOf(o.clone())),
            sh::DATATYPE => {
                if !o.is_iri() {
                    return Err(malformed(format!("sh:datatype {o} is not an IRI")));
                }
                constraints.push(Constraint::Datatype(o.clone()));
            }
            sh::PATTERN => {
                let pattern = o.as_literal().ok_or_else(|| malformed("sh:pattern must be a literal".into()))?.lexical();
                let flags = value(sh::FLAGS).and_then(|f| f.as_literal().map(|l| l.lexical().to_owned())).unwrap_or_default();
                let regex = crate::sparql::compile_regex(pattern, &flags)
                    .map_err(|e| malformed(format!("invalid sh:pattern {pattern:?}: {e}")))?;
                constraints.push(Constraint::Pattern(PatternConstraint { pattern: pattern.to_owned(), flags, regex }));
            }
            sh::MIN_COUNT => constraints.push(Constraint::MinCount(count(o).map_err(malformed)?)),
            sh::MAX_COUNT => constraints.push(Constraint::MaxCount(count(o).map_err(malformed)?)),
            sh::CLASS => constraints.push(Constraint::Class(o.clone())),
            sh::NODE_KIND => {
                let kind = NodeKind::from_iri(o).ok_or_else(|| malformed(format!("unknown sh:nodeKind {o}")))?;
                constraints.push(Constraint::NodeKind(kind));
            }
            sh::IN => constraints.push(Constraint::In(read_list(g, o).map_err(malformed)?)),
            sh::OR => {
                let members = read_list(g, o).map_err(malformed)?;
                let ids = members.iter().map(shape_ref).collect::<Result<Vec<_>, _>>()?;
                constraints.push(Constraint::Or(ids));
            }
            sh::NOT => constraints.push(Constraint::Not(shape_ref(o)?)),
            sh::NODE => constraints.push(Constraint::Node(shape_ref(o)?)),
            sh::PROPERTY => {
                let id = shape_ref(o)?;
                if g.object(o, &Term::iri(sh::PATH)).is_none() {
                    return Err(malformed(format!("sh:property value {o} has no sh:path")));
                }
                constraints.push(Constraint::Property(id));
            }
            sh::SPARQL => constraints.push(Constraint::Sparql(Box::new(sparql_constraint(g, node, o, diagnostics)?))),
            p if p.starts_with(SH) && !PASSIVE_PREDICATES.contains(&p) => diagnostics.push(ShapeDiagnostic {
                shape: node.clone(),
                message: format!("unsupported parameter sh:{} ignored", &p[SH.len()..]),
            }),
            _ => {}
        }
    }
    Ok(Shape { id: node.clone(), path, targets, constraints, severity, message, deactivated })
}

fn parse_path(g: &Graph, shape: &Term, p: &Term) -> Result<PropertyPath, ShapeError> {
    if p.is_iri() {
        return Ok(PropertyPath::Predicate(p.clone()));
    }
    if p.is_blank() {
        let all: Vec<_> = g.matching(Some(p), None, None).collect();
        if let [t] = all.as_slice() {
            if t.predicate.is(sh::INVERSE_PATH) && t.object.is_iri() {
                return Ok(PropertyPath::Inverse(t.object.clone()));
            }
        }
    }
    Err(ShapeError::UnsupportedPath { shape: shape.clone() })
}

fn count(t: &Term) -> Result<u64, String> {
    t.as_literal()
        .filter(|l| is_integer_type(l.datatype()) && is_well_formed(l.datatype(), l.lexical()))
        .and_then(|l| l.lexical().trim_start_matches('+').parse::<u64>().ok())
        .ok_or_else(|| format!("{t} is not a non-negative integer"))
}

fn is_true(t: &Term) -> bool {
    t.as_literal().is_some_and(|l| matches!(l.lexical(), "true" | "1"))
}

fn sparql_constraint(
    g: &Graph,
    shape: &Term,
    node: &Term,
    diagnostics: &mut Vec<ShapeDiagnostic>,
) -> Result<SparqlConstraint, ShapeError> {
    let malformed = |message: String| ShapeError::Malformed { shape: shape.clone(), message };
    let select = g
        .object(node, &Term::iri(sh::SELECT))
        .and_then(|t| t.as_literal())
        .ok_or_else(|| malformed(format!("SPARQL constraint {node} has no sh:select")))?
        .lexical()
        .to_owned();
    if g.object(node, &Term::iri(sh::PREFIXES)).is_some() {
        diagnostics.push(ShapeDiagnostic {
            shape: shape.clone(),
            message: "sh:prefixes ignored; prefixes are taken from PREFIX declarations in sh:select".into(),
        });
    }
    let query = parse_query(&select).map_err(|e| malformed(format!("sh:select: {e}")))?;
    if !query.variables().iter().any(|v| &**v == "this") {
        return Err(malformed("sh:select must project $this".into()));
    }
    let prepared = PreparedQuery::new(&query);
    Ok(SparqlConstraint {
        node: node.clone(),
        select,
        query,
        prepared,
        message: g.objects(node, &Term::iri(sh::MESSAGE)).min().cloned(),
        deactivated: g.object(node, &Term::iri(sh::DEACTIVATED)).is_some_and(is_true),
    })
}

fn check_cycles(shapes: &[Shape]) -> Result<(), ShapeError> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    fn visit(i: usize, shapes: &[Shape], marks: &mut [Mark]) -> Result<(), ShapeError> {
        match marks[i] {
            Mark::Done => return Ok(()),
            Mark::Active => return Err(ShapeError::ReferenceCycle(shapes[i].id.clone())),
            Mark::New => {}
        }
        marks[i] = Mark::Active;
        for c in &shapes[i].constraints {
            for r in c.references() {
                visit(r.0, shapes, marks)?;
            }
        }
        marks[i] = Mark::Done;
        Ok(())
    }
    let mut marks = vec![Mark::New; shapes.len()];
    for i in 0..shapes.len() {
        visit(i, shapes, &mut marks)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_turtle;

    fn load(text: &str) -> Result<ShapesGraph, ShapeError> {
        let prefixed = format!(
            "@prefix sh: <http://www.w3.org/ns/shacl#> .\n@prefix ex: <http://ex/> .\n@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n{text}"
        );
        load_shapes(&parse_turtle(&prefixed, None).unwrap().graph)
    }

    #[test]
    fn loads_property_shapes_and_references() {
        let sg = load(
            "ex:S a sh:NodeShape ; sh:targetClass ex:C ; sh:property ex:P ; sh:or ( [ sh:class ex:A ] [ sh:class ex:B ] ) .
             ex:P sh:path ex:p ; sh:minCount 1 ; sh:maxCount 2 ; sh:datatype xsd:string ; sh:pattern \"^a\" ; sh:flags \"i\" .",
        )
        .unwrap();
        assert_eq!(sg.len(), 4);
        let s = sg.shape(&Term::iri("http://ex/S")).unwrap();
        assert_eq!(s.targets, vec![Target::Class(Term::iri("http://ex/C"))]);
        assert_eq!(s.constraints.len(), 2);
        let p = sg.shape(&Term::iri("http://ex/P")).unwrap();
        assert_eq!(p.path, Some(PropertyPath::Predicate(Term::iri("http://ex/p"))));
        assert_eq!(p.constraints.len(), 4);
        assert!(sg.diagnostics().is_empty());
    }

    #[test]
    fn rejects_sequence_paths_and_cycles() {
        let err = load("ex:P sh:path ( ex:a ex:b ) ; sh:minCount 1 .").unwrap_err();
        assert!(matches!(err, ShapeError::UnsupportedPath { .. }));
        let err = load("ex:A sh:targetNode ex:x ; sh:node ex:B . ex:B sh:node ex:A .").unwrap_err();
        assert!(matches!(err, ShapeError::ReferenceCycle(_)));
        assert!(load("ex:P sh:path ex:p ; sh:minCount -1 .").is_err());
        assert!(load("ex:P sh:path ex:p ; sh:pattern \"(\" .").is_err());
    }

    #[test]
    fn inverse_path() {
        let sg = load("ex:P sh:path [ sh:inversePath ex:p ] ; sh:minCount 1 .").unwrap();
        assert_eq!(sg.shapes()[0].path, Some(PropertyPath::Inverse(Term::iri("http://ex/p"))));
    }

    #[test]
    fn unknown_parameters_become_diagnostics() {
        let sg = load("ex:P sh:path ex:p ; sh:minLength 3 ; sh:name \"n\" .").unwrap();
        assert_eq!(sg.diagnostics().len(), 1);
        assert!(sg.diagnostics()[0].message.contains("minLength"));
    }

    #[test]
    fn sparql_constraint_requires_this() {
        let ok = load("ex:S sh:targetClass ex:C ; sh:sparql [ sh:select \"SELECT $this WHERE { $this ?p ?o }\" ; sh:prefixes ex: ] .").unwrap();
        assert!(ok.has_sparql());
        assert_eq!(ok.diagnostics().len(), 1);
        assert!(load("ex:S sh:targetClass ex:C ; sh:sparql [ sh:select \"SELECT ?o WHERE { $this ?p ?o }\" ] .").is_err());
        assert!(load("ex:S sh:targetClass ex:C ; sh:sparql [ sh:select \"SELECT $this WHERE { $this ?p ?o OPTIONAL { ?o ?q ?r } }\" ] .").is_err());
    }
}
