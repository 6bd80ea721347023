//! Dataset-level validation.
//!
//! A shapes dataset holds shapes graphs as named graphs and, in its default
//! graph, declarations that say which data graphs each shapes graph targets:
//!
//! ```text
//! <sg> shds:targetGraph <g> .                      # one graph (shds:default allowed)
//! <sg> shds:targetGraphPattern ".*/rinf/[A-Z0-9]{4}$" .
//! <sg> shds:targetGraphCombination [ shds:or ( <g1> [ shds:minus ( shds:all <g2> ) ] ) ] .
//! ```
//!
//! Validation first resolves every declaration to focus graphs (creation
//! phase), then validates each (shapes graph, focus graph) pair with plain
//! SHACL semantics (validation phase) and annotates every result with
//! `shds:focusGraph` and `shds:sourceShapeGraph`.

mod target;
mod view;

use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::model::{Dataset, Graph, Term};
use crate::shacl::{load_shapes, validate_graph, ShapeDiagnostic, ShapeError, ShapesGraph, ValidationReport};
use crate::vocab::shds;

pub use target::{
    flatten, merge_graphs, CombinationOp, CombinationTree, GraphPattern, Operand, TargetSpec, COMBINATION_IRI_PREFIX,
};
pub use view::EvaluationDataset;

#[derive(Debug, thiserror::Error)]
pub enum DsError {
    #[error("shapes graph {0} is declared but not present in the shapes dataset")]
    MissingShapesGraph(Term),
    #[error("shapes graph {graph}: {source}")]
    Shapes {
        graph: Term,
        #[source]
        source: ShapeError,
    },
    #[error("invalid target declaration for {graph}: {message}")]
    Target { graph: Term, message: String },
    #[error("invalid graph pattern {pattern:?}: {message}")]
    Pattern { pattern: String, message: String },
    #[error("malformed combination at {node}: {message}")]
    Combination { node: Term, message: String },
    #[error("validating {shapes_graph} on {focus_graph}: {message}")]
    Pair { shapes_graph: Term, focus_graph: Term, message: String },
}

#[derive(Debug, Clone)]
pub struct Declaration {
    pub shapes_graph: Term,
    pub target: TargetSpec,
}

/// Loaded shapes graphs plus their target declarations.
#[derive(Debug, Clone, Default)]
pub struct ShapesDataset {
    declarations: Vec<Declaration>,
    shapes: BTreeMap<Term, ShapesGraph>,
}

impl ShapesDataset {
    pub fn declarations(&self) -> &[Declaration] {
        &self.declarations
    }

    pub fn shapes_graph(&self, name: &Term) -> Option<&ShapesGraph> {
        self.shapes.get(name)
    }

    pub fn shapes_graphs(&self) -> impl Iterator<Item = (&Term, &ShapesGraph)> {
        self.shapes.iter()
    }

    /// Load diagnostics of every shapes graph, tagged with the graph name.
    pub fn diagnostics(&self) -> Vec<(Term, ShapeDiagnostic)> {
        self.shapes.iter().flat_map(|(n, sg)| sg.diagnostics().iter().map(|d| (n.clone(), d.clone()))).collect()
    }
}

/// Reads declarations from the default graph and loads each referenced shapes
/// graph once. Named graphs no declaration refers to are not loaded.
pub fn load_shapes_dataset(dataset: &Dataset) -> Result<ShapesDataset, DsError> {
    let decl_graph = dataset.default_graph();
    let mut declarations = Vec::new();
    for t in decl_graph.sorted() {
        let Some(p) = t.predicate.as_iri() else { continue };
        let sg = &t.subject;
        let bad = |message: &str| DsError::Target { graph: sg.clone(), message: message.to_owned() };
        let target = match p {
            shds::TARGET_GRAPH => {
                if t.object.is(shds::ALL) {
                    return Err(bad("shds:all is only valid inside a combination"));
                }
                if !t.object.is_iri() {
                    return Err(bad("shds:targetGraph must be an IRI"));
                }
                TargetSpec::Graph(t.object.clone())
            }
            shds::TARGET_GRAPH_PATTERN => {
                let source = t.object.as_literal().ok_or_else(|| bad("shds:targetGraphPattern must be a literal"))?.lexical();
                let pattern = GraphPattern::new(source)
                    .map_err(|e| DsError::Pattern { pattern: source.to_owned(), message: e.to_string() })?;
                TargetSpec::Pattern(pattern)
            }
            shds::TARGET_GRAPH_COMBINATION => {
                TargetSpec::Combination(parse_tree(decl_graph, &t.object, &mut Vec::new())?)
            }
            _ => continue,
        };
        if !sg.is_iri() {
            return Err(bad("the declaring subject must be a shapes graph IRI"));
        }
        declarations.push(Declaration { shapes_graph: sg.clone(), target });
    }
    let mut shapes = BTreeMap::new();
    for d in &declarations {
        if shapes.contains_key(&d.shapes_graph) {
            continue;
        }
        let graph = dataset.named_graph(&d.shapes_graph).ok_or_else(|| DsError::MissingShapesGraph(d.shapes_graph.clone()))?;
        let sg = load_shapes(graph).map_err(|source| DsError::Shapes { graph: d.shapes_graph.clone(), source })?;
        shapes.insert(d.shapes_graph.clone(), sg);
    }
    Ok(ShapesDataset { declarations, shapes })
}

const OPERATORS: [(&str, CombinationOp); 3] =
    [(shds::OR, CombinationOp::Or), (shds::AND, CombinationOp::And), (shds::MINUS, CombinationOp::Minus)];

fn operator_triples<'g>(g: &'g Graph, node: &Term) -> Vec<(CombinationOp, &'g Term)> {
    let mut out = Vec::new();
    for (iri, op) in OPERATORS {
        for o in g.objects(node, &Term::iri(iri)) {
            out.push((op, o));
        }
    }
    out
}

fn parse_tree(g: &Graph, node: &Term, stack: &mut Vec<Term>) -> Result<CombinationTree, DsError> {
    let err = |message: String| DsError::Combination { node: node.clone(), message };
    if stack.contains(node) {
        return Err(err("combination refers to itself".into()));
    }
    let (op, list) = match operator_triples(g, node).as_slice() {
        [] => return Err(err("no shds:or, shds:and or shds:minus".into())),
        [one] => *one,
        _ => return Err(err("more than one operator".into())),
    };
    let members = crate::shacl::read_list(g, list).map_err(err)?;
    if members.is_empty() {
        return Err(err(format!("shds:{op} needs at least one operand")));
    }
    stack.push(node.clone());
    let mut operands = Vec::with_capacity(members.len());
    for m in &members {
        let operand = if m.is(shds::ALL) {
            Operand::All
        } else if !operator_triples(g, m).is_empty() {
            Operand::Tree(parse_tree(g, m, stack)?)
        } else if m.is_iri() {
            Operand::Graph(m.clone())
        } else {
            return Err(err(format!("operand {m} is neither a graph IRI nor a combination")));
        };
        operands.push(operand);
    }
    stack.pop();
    Ok(CombinationTree::new(op, operands))
}

/// A graph selected or computed for validation.
#[derive(Debug, Clone)]
pub struct FocusGraph<'a> {
    /// The graph name, or the skolem IRI of a combination.
    pub id: Term,
    pub graph: Cow<'a, Graph>,
}

/// Output of the creation phase: focus graphs and the (shapes graph, focus
/// graph index) pairs to validate.
#[derive(Debug, Clone, Default)]
pub struct ValidationPlan<'a> {
    pub focus_graphs: Vec<FocusGraph<'a>>,
    pub pairs: Vec<(Term, usize)>,
}

#[derive(Debug, Clone, Copy)]
pub struct ValidateOptions {
    /// Number of pairs validated concurrently; 1 is sequential.
    pub parallelism: usize,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions { parallelism: 1 }
    }
}

/// Focus graphs a declaration resolves to over `data`. A `shds:targetGraph`
/// naming a graph absent from `data` resolves to nothing.
pub fn resolve_focus_graphs<'a>(target: &TargetSpec, data: &'a Dataset) -> Vec<FocusGraph<'a>> {
    match target {
        TargetSpec::Graph(name) if name.is(shds::DEFAULT) => {
            vec![FocusGraph { id: name.clone(), graph: Cow::Borrowed(data.default_graph()) }]
        }
        TargetSpec::Graph(name) => data
            .named_graph(name)
            .map(|g| FocusGraph { id: name.clone(), graph: Cow::Borrowed(g) })
            .into_iter()
            .collect(),
        TargetSpec::Pattern(p) => data
            .named_graphs()
            .filter(|(n, _)| n.as_iri().is_some_and(|iri| p.matches(iri)))
            .map(|(n, g)| FocusGraph { id: n.clone(), graph: Cow::Borrowed(g) })
            .collect(),
        TargetSpec::Combination(tree) => {
            vec![FocusGraph { id: tree.skolem_id(), graph: Cow::Owned(tree.materialize(data)) }]
        }
    }
}

/// Creation phase: resolves every declaration, materializing each distinct
/// focus graph once.
pub fn plan<'a>(shapes: &ShapesDataset, data: &'a Dataset) -> ValidationPlan<'a> {
    let mut plan = ValidationPlan::default();
    let mut index: BTreeMap<Term, usize> = BTreeMap::new();
    let mut pairs = BTreeSet::new();
    for d in &shapes.declarations {
        let resolved = match &d.target {
            // Skip re-materializing a combination already in the plan.
            TargetSpec::Combination(tree) if index.contains_key(&tree.skolem_id()) => {
                pairs.insert((d.shapes_graph.clone(), index[&tree.skolem_id()]));
                continue;
            }
            t => resolve_focus_graphs(t, data),
        };
        for fg in resolved {
            let i = *index.entry(fg.id.clone()).or_insert_with(|| {
                plan.focus_graphs.push(fg);
                plan.focus_graphs.len() - 1
            });
            pairs.insert((d.shapes_graph.clone(), i));
        }
    }
    plan.pairs = pairs.into_iter().collect();
    plan
}

/// Validation phase: validates every planned pair and merges the annotated results.
pub fn execute(
    shapes: &ShapesDataset,
    data: &Dataset,
    plan: &ValidationPlan<'_>,
    options: &ValidateOptions,
) -> Result<ValidationReport, DsError> {
    let run = |(sg_name, fi): &(Term, usize)| -> Result<Vec<_>, DsError> {
        let sg = shapes.shapes.get(sg_name).ok_or_else(|| DsError::MissingShapesGraph(sg_name.clone()))?;
        let focus = &plan.focus_graphs[*fi];
        let eds = EvaluationDataset::new(data, Cow::Borrowed(&*focus.graph));
        let mut report = validate_graph(sg, &focus.graph, Some(&eds));
        for r in &mut report.results {
            r.focus_graph = Some(focus.id.clone());
            r.source_shapes_graph = Some(sg_name.clone());
        }
        Ok(report.results)
    };
    let per_pair: Vec<Vec<_>> = if options.parallelism <= 1 {
        plan.pairs.iter().map(run).collect::<Result<_, _>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(options.parallelism).build().map_err(|e| {
            DsError::Pair { shapes_graph: Term::iri(shds::ALL), focus_graph: Term::iri(shds::ALL), message: e.to_string() }
        })?;
        pool.install(|| plan.pairs.par_iter().map(run).collect::<Result<_, _>>())?
    };
    Ok(ValidationReport::new(per_pair.into_iter().flatten().collect()))
}

/// Plans and executes in one call.
pub fn validate_dataset(
    shapes: &ShapesDataset,
    data: &Dataset,
    options: &ValidateOptions,
) -> Result<ValidationReport, DsError> {
    let plan = plan(shapes, data);
    execute(shapes, data, &plan, options)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_trig;

    const SHAPES: &str = r#"
@prefix sh: <http://www.w3.org/ns/shacl#> .
@prefix shds: <http://www.w3id.org/shacl-ds#> .
@prefix ex: <http://ex/> .
ex:sg1 shds:targetGraphPattern "^http://ex/op/" .
ex:sg1 shds:targetGraphCombination [ shds:or ( <http://ex/op/a> ex:ref ) ] .
ex:sg2 shds:targetGraph shds:default .
GRAPH ex:sg1 { ex:S sh:targetClass ex:C ; sh:property [ sh:path ex:p ; sh:minCount 1 ] . }
GRAPH ex:sg2 { ex:T sh:targetSubjectsOf ex:q ; sh:class ex:K . }
GRAPH ex:unused { ex:U sh:path ( ex:a ex:b ) . }
"#;

    const DATA: &str = r#"
@prefix ex: <http://ex/> .
ex:d ex:q ex:v .
GRAPH <http://ex/op/a> { ex:x a ex:C . }
GRAPH <http://ex/op/b> { ex:y a ex:C ; ex:p 1 . }
GRAPH ex:ref { ex:x ex:p 2 . }
"#;

    #[test]
    fn declarations_resolve_and_results_are_annotated() {
        let sd = load_shapes_dataset(&parse_trig(SHAPES).unwrap().dataset).unwrap();
        assert_eq!(sd.declarations().len(), 3);
        assert!(sd.shapes_graph(&Term::iri("http://ex/unused")).is_none());
        let data = parse_trig(DATA).unwrap().dataset;
        let p = plan(&sd, &data);
        assert_eq!(p.focus_graphs.len(), 4);
        assert_eq!(p.pairs.len(), 4);
        let report = execute(&sd, &data, &p, &ValidateOptions::default()).unwrap();
        let mut got: Vec<(String, String)> = report
            .results
            .iter()
            .map(|r| (r.source_shapes_graph.clone().unwrap().to_string(), r.focus_graph.clone().unwrap().to_string()))
            .collect();
        got.sort();
        assert_eq!(
            got,
            [
                ("<http://ex/sg1>".to_owned(), "<http://ex/op/a>".to_owned()),
                ("<http://ex/sg2>".to_owned(), format!("<{}>", shds::DEFAULT)),
            ]
        );
        let parallel = validate_dataset(&sd, &data, &ValidateOptions { parallelism: 4 }).unwrap();
        assert_eq!(parallel, report);
    }

    #[test]
    fn load_errors() {
        let missing = "@prefix shds: <http://www.w3id.org/shacl-ds#> . <http://ex/sg> shds:targetGraph <http://ex/g> .";
        assert!(matches!(load_shapes_dataset(&parse_trig(missing).unwrap().dataset), Err(DsError::MissingShapesGraph(_))));
        let all = "@prefix shds: <http://www.w3id.org/shacl-ds#> . <http://ex/sg> shds:targetGraph shds:all . GRAPH <http://ex/sg> {}";
        assert!(matches!(load_shapes_dataset(&parse_trig(all).unwrap().dataset), Err(DsError::Target { .. })));
        let bad_pattern = "@prefix shds: <http://www.w3id.org/shacl-ds#> . <http://ex/sg> shds:targetGraphPattern \"(\" .";
        assert!(matches!(load_shapes_dataset(&parse_trig(bad_pattern).unwrap().dataset), Err(DsError::Pattern { .. })));
        let two_ops = "@prefix shds: <http://www.w3id.org/shacl-ds#> . <http://ex/sg> shds:targetGraphCombination [ shds:or ( <http://ex/a> ) ; shds:and ( <http://ex/b> ) ] .";
        assert!(matches!(load_shapes_dataset(&parse_trig(two_ops).unwrap().dataset), Err(DsError::Combination { .. })));
        let bad_list = "@prefix shds: <http://www.w3id.org/shacl-ds#> . <http://ex/sg> shds:targetGraphCombination [ shds:or <http://ex/notalist> ] .";
        assert!(matches!(load_shapes_dataset(&parse_trig(bad_list).unwrap().dataset), Err(DsError::Combination { .. })));
        let cyclic = "@prefix shds: <http://www.w3id.org/shacl-ds#> . <http://ex/sg> shds:targetGraphCombination <http://ex/c> . <http://ex/c> shds:or ( <http://ex/c> ) .";
        assert!(matches!(load_shapes_dataset(&parse_trig(cyclic).unwrap().dataset), Err(DsError::Combination { .. })));
    }

    #[test]
    fn absent_target_graph_resolves_to_nothing() {
        let data = Dataset::new();
        assert!(resolve_focus_graphs(&TargetSpec::Graph(Term::iri("http://ex/none")), &data).is_empty());
        assert_eq!(resolve_focus_graphs(&TargetSpec::Graph(Term::iri(shds::DEFAULT)), &data).len(), 1);
    }
}
