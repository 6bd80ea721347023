//! Index-driven evaluation. Variables are compiled to row slots; triple
//! patterns are matched through the graph indexes, and joins whose right side
//! contains no filter are evaluated as bind joins (the right side runs once
//! per left solution with those bindings substituted).

use rustc_hash::{FxHashMap, FxHashSet};

use crate::model::{Graph, Term};

use super::expr::{eval_expr, filter_passes};
use super::{Bindings, EvaluationDataset, Expr, Pattern, Projection, ProjectionItem, Query, Solutions, TermPattern, Variable};

type Row = Vec<Option<Term>>;

#[derive(Clone, Debug)]
enum Slot {
    Const(Term),
    Var(usize),
}

#[derive(Clone, Debug)]
enum Node {
    Bgp(Vec<[Slot; 3]>),
    Graph { name: Slot, inner: Box<Node>, prebind: bool },
    Join { left: Box<Node>, right: Box<Node>, bind: bool },
    Union(Box<Node>, Box<Node>),
    Filter(Expr, Box<Node>),
    Exists { pattern: Box<Node>, outer: Box<Node>, negated: bool },
}

#[derive(Clone, Debug)]
enum Output {
    Slot(usize),
    Expr(Expr),
}

/// A query compiled for repeated evaluation (one SHACL-SPARQL constraint is
/// evaluated once per focus node).
#[derive(Clone, Debug)]
pub struct PreparedQuery {
    slots: FxHashMap<Variable, usize>,
    root: Node,
    variables: Vec<Variable>,
    outputs: Vec<Output>,
    distinct: bool,
}

impl PreparedQuery {
    pub fn new(query: &Query) -> Self {
        let mut slots = FxHashMap::default();
        let root = compile(&query.pattern, &mut slots);
        let variables = query.variables();
        let outputs = match &query.projection {
            Projection::All => variables.iter().map(|v| Output::Slot(slot_of(&mut slots, v))).collect(),
            Projection::Items(items) => items
                .iter()
                .map(|item| match item {
                    ProjectionItem::Var(v) => Output::Slot(slot_of(&mut slots, v)),
                    ProjectionItem::Expr { expr, .. } => Output::Expr(expr.clone()),
                })
                .collect(),
        };
        PreparedQuery { slots, root, variables, outputs, distinct: query.distinct }
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn evaluate(&self, eds: &EvaluationDataset<'_>, pre_bound: &Bindings) -> Solutions {
        let mut init: Row = vec![None; self.slots.len()];
        for (name, value) in pre_bound {
            if let Some(&i) = self.slots.get(name.as_str()) {
                init[i] = Some(value.clone());
            }
        }
        let ctx = Ctx { eds, slots: &self.slots };
        let mut rows = Vec::new();
        ctx.eval(&self.root, eds.default_graph(), &init, &mut rows);
        let mut out: Vec<Row> = rows
            .iter()
            .map(|row| {
                self.outputs
                    .iter()
                    .map(|o| match o {
                        Output::Slot(i) => row[*i].clone(),
                        Output::Expr(e) => eval_expr(e, &ctx.lookup(row)).ok(),
                    })
                    .collect()
            })
            .collect();
        if self.distinct {
            let mut seen = FxHashSet::default();
            out.retain(|r| seen.insert(r.clone()));
        }
        Solutions { variables: self.variables.clone(), rows: out }
    }
}

fn slot_of(slots: &mut FxHashMap<Variable, usize>, v: &Variable) -> usize {
    let next = slots.len();
    *slots.entry(v.clone()).or_insert(next)
}

fn compile_term(t: &TermPattern, slots: &mut FxHashMap<Variable, usize>) -> Slot {
    match t {
        TermPattern::Term(t) => Slot::Const(t.clone()),
        TermPattern::Var(v) => Slot::Var(slot_of(slots, v)),
    }
}

fn compile(p: &Pattern, slots: &mut FxHashMap<Variable, usize>) -> Node {
    match p {
        Pattern::Bgp(tps) => Node::Bgp(
            tps.iter()
                .map(|tp| {
                    [compile_term(&tp.subject, slots), compile_term(&tp.predicate, slots), compile_term(&tp.object, slots)]
                })
                .collect(),
        ),
        Pattern::Graph { name, inner } => Node::Graph {
            name: compile_term(name, slots),
            inner: Box::new(compile(inner, slots)),
            prebind: inner.is_filter_free(),
        },
        Pattern::Join(l, r) => Node::Join {
            left: Box::new(compile(l, slots)),
            right: Box::new(compile(r, slots)),
            bind: r.is_filter_free(),
        },
        Pattern::Union(l, r) => Node::Union(Box::new(compile(l, slots)), Box::new(compile(r, slots))),
        Pattern::Filter { expr, inner } => {
            register_expr_vars(expr, slots);
            Node::Filter(expr.clone(), Box::new(compile(inner, slots)))
        }
        Pattern::NotExists { pattern, outer } => Node::Exists {
            outer: Box::new(compile(outer, slots)),
            pattern: Box::new(compile(pattern, slots)),
            negated: true,
        },
        Pattern::Exists { pattern, outer } => Node::Exists {
            outer: Box::new(compile(outer, slots)),
            pattern: Box::new(compile(pattern, slots)),
            negated: false,
        },
    }
}

fn register_expr_vars(e: &Expr, slots: &mut FxHashMap<Variable, usize>) {
    match e {
        Expr::Var(v) | Expr::Bound(v) => {
            slot_of(slots, v);
        }
        Expr::Const(_) => {}
        Expr::Or(a, b) | Expr::And(a, b) | Expr::Compare(_, a, b) => {
            register_expr_vars(a, slots);
            register_expr_vars(b, slots);
        }
        Expr::Not(a) | Expr::Str(a) | Expr::Datatype(a) | Expr::Lang(a) => register_expr_vars(a, slots),
        Expr::Regex { text, pattern, flags } => {
            register_expr_vars(text, slots);
            register_expr_vars(pattern, slots);
            if let Some(f) = flags {
                register_expr_vars(f, slots);
            }
        }
    }
}

struct Ctx<'e, 'd> {
    eds: &'e EvaluationDataset<'d>,
    slots: &'e FxHashMap<Variable, usize>,
}

impl Ctx<'_, '_> {
    fn lookup<'r>(&'r self, row: &'r Row) -> impl Fn(&str) -> Option<Term> + 'r {
        move |name: &str| self.slots.get(name).and_then(|&i| row[i].clone())
    }

    fn value<'r>(slot: &'r Slot, row: &'r Row) -> Option<&'r Term> {
        match slot {
            Slot::Const(t) => Some(t),
            Slot::Var(i) => row[*i].as_ref(),
        }
    }

    fn eval(&self, node: &Node, graph: &Graph, row: &Row, out: &mut Vec<Row>) {
        match node {
            Node::Bgp(tps) => self.bgp(tps, graph, row.clone(), out),
            Node::Graph { name, inner, prebind } => match name {
                Slot::Const(t) => self.eval(inner, self.eds.graph(t), row, out),
                Slot::Var(i) => match &row[*i] {
                    Some(bound) => self.eval(inner, self.eds.graph(bound), row, out),
                    None => {
                        for name in self.eds.graph_names() {
                            let g = self.eds.graph(&name);
                            if *prebind {
                                let mut r = row.clone();
                                r[*i] = Some(name);
                                self.eval(inner, g, &r, out);
                            } else {
                                let mut tmp = Vec::new();
                                self.eval(inner, g, row, &mut tmp);
                                for mut r in tmp {
                                    match &r[*i] {
                                        Some(v) if *v != name => continue,
                                        _ => r[*i] = Some(name.clone()),
                                    }
                                    out.push(r);
                                }
                            }
                        }
                    }
                },
            },
            Node::Join { left, right, bind } => {
                let mut lefts = Vec::new();
                self.eval(left, graph, row, &mut lefts);
                if lefts.is_empty() {
                    return;
                }
                if *bind {
                    for l in &lefts {
                        self.eval(right, graph, l, out);
                    }
                } else {
                    let mut rights = Vec::new();
                    self.eval(right, graph, row, &mut rights);
                    for l in &lefts {
                        for r in &rights {
                            if let Some(m) = merge(l, r) {
                                out.push(m);
                            }
                        }
                    }
                }
            }
            Node::Union(l, r) => {
                self.eval(l, graph, row, out);
                self.eval(r, graph, row, out);
            }
            Node::Filter(expr, inner) => {
                let start = out.len();
                self.eval(inner, graph, row, out);
                let mut kept = start;
                for i in start..out.len() {
                    if filter_passes(expr, &self.lookup(&out[i])) {
                        out.swap(kept, i);
                        kept += 1;
                    }
                }
                out.truncate(kept);
            }
            Node::Exists { pattern, outer, negated } => {
                let mut tmp = Vec::new();
                self.eval(outer, graph, row, &mut tmp);
                for r in tmp {
                    let mut found = Vec::new();
                    self.eval(pattern, graph, &r, &mut found);
                    if found.is_empty() == *negated {
                        out.push(r);
                    }
                }
            }
        }
    }

    fn bgp(&self, tps: &[[Slot; 3]], graph: &Graph, row: Row, out: &mut Vec<Row>) {
        let Some((first, rest)) = tps.split_first() else {
            out.push(row);
            return;
        };
        let [s, p, o] = first;
        let (sv, pv, ov) = (Self::value(s, &row), Self::value(p, &row), Self::value(o, &row));
        for t in graph.matching(sv, pv, ov) {
            let mut next = row.clone();
            let mut ok = true;
            for (slot, term) in [(s, &t.subject), (p, &t.predicate), (o, &t.object)] {
                if let Slot::Var(i) = slot {
                    match &next[*i] {
                        Some(v) => ok &= v == term,
                        None => next[*i] = Some(term.clone()),
                    }
                }
            }
            if ok {
                self.bgp(rest, graph, next, out);
            }
        }
    }
}

fn merge(a: &Row, b: &Row) -> Option<Row> {
    let mut out = a.clone();
    for (slot, v) in out.iter_mut().zip(b) {
        match (&*slot, v) {
            (Some(x), Some(y)) if x != y => return None,
            (None, Some(y)) => *slot = Some(y.clone()),
            _ => {}
        }
    }
    Some(out)
}
