//! Reference evaluator used to cross-check [`super::evaluate`].
//!
//! Pre-bound variables are substituted into the algebra as constants, then
//! every operator is evaluated bottom-up over explicit solution multisets.
//! Basic graph patterns are solved by enumerating candidate terms for each
//! variable and testing the instantiated triples for membership; no index
//! lookups or bind joins are involved. The cost is exponential in the number
//! of variables per pattern, so inputs are capped at [`ORACLE_MAX_TRIPLES`].

use std::collections::BTreeMap;

use rustc_hash::FxHashSet;

use crate::model::{Graph, Term, Triple};

use super::expr::{eval_expr, filter_passes};
use super::{Bindings, EvaluationDataset, Pattern, Projection, ProjectionItem, Query, Solutions, TermPattern, TriplePattern, Variable};

pub const ORACLE_MAX_TRIPLES: usize = 10_000;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("dataset has {0} triples, above the oracle limit of {ORACLE_MAX_TRIPLES}")]
    TooLarge(usize),
}

type Mu = BTreeMap<Variable, Term>;

pub fn evaluate_oracle(query: &Query, eds: &EvaluationDataset<'_>, pre_bound: &Bindings) -> Result<Solutions, OracleError> {
    let size = eds.triple_count();
    if size > ORACLE_MAX_TRIPLES {
        return Err(OracleError::TooLarge(size));
    }
    let fixed: Mu = pre_bound.iter().map(|(k, v)| (Variable::from(k.as_str()), v.clone())).collect();
    let pattern = substitute(&query.pattern, &fixed);
    let solutions = solve(&pattern, eds.default_graph(), eds, &fixed);
    let variables = query.variables();
    let mut rows: Vec<Vec<Option<Term>>> = solutions
        .iter()
        .map(|mu| {
            let get = |name: &str| mu.get(name).or_else(|| fixed.get(name)).cloned();
            match &query.projection {
                Projection::All => variables.iter().map(|v| get(v)).collect(),
                Projection::Items(items) => items
                    .iter()
                    .map(|item| match item {
                        ProjectionItem::Var(v) => get(v),
                        ProjectionItem::Expr { expr, .. } => eval_expr(expr, &get).ok(),
                    })
                    .collect(),
            }
        })
        .collect();
    if query.distinct {
        let mut unique = Vec::new();
        for r in rows {
            if !unique.contains(&r) {
                unique.push(r);
            }
        }
        rows = unique;
    }
    Ok(Solutions { variables, rows })
}

fn sub_term(t: &TermPattern, fixed: &Mu) -> TermPattern {
    match t {
        TermPattern::Var(v) => match fixed.get(v) {
            Some(value) => TermPattern::Term(value.clone()),
            None => t.clone(),
        },
        TermPattern::Term(_) => t.clone(),
    }
}

/// Replaces fixed variables in triple patterns and graph names. Filter
/// expressions keep their variables and read fixed values at evaluation time.
fn substitute(p: &Pattern, fixed: &Mu) -> Pattern {
    let b = |q: &Pattern| Box::new(substitute(q, fixed));
    match p {
        Pattern::Bgp(tps) => Pattern::Bgp(
            tps.iter()
                .map(|tp| TriplePattern {
                    subject: sub_term(&tp.subject, fixed),
                    predicate: sub_term(&tp.predicate, fixed),
                    object: sub_term(&tp.object, fixed),
                })
                .collect(),
        ),
        Pattern::Graph { name, inner } => Pattern::Graph { name: sub_term(name, fixed), inner: b(inner) },
        Pattern::Join(l, r) => Pattern::Join(b(l), b(r)),
        Pattern::Union(l, r) => Pattern::Union(b(l), b(r)),
        Pattern::Filter { expr, inner } => Pattern::Filter { expr: expr.clone(), inner: b(inner) },
        Pattern::NotExists { pattern, outer } => Pattern::NotExists { pattern: b(pattern), outer: b(outer) },
        Pattern::Exists { pattern, outer } => Pattern::Exists { pattern: b(pattern), outer: b(outer) },
    }
}

fn compatible(a: &Mu, b: &Mu) -> bool {
    a.iter().all(|(k, v)| b.get(k).is_none_or(|w| w == v))
}

fn solve(p: &Pattern, active: &Graph, eds: &EvaluationDataset<'_>, fixed: &Mu) -> Vec<Mu> {
    match p {
        Pattern::Bgp(tps) => solve_bgp(tps, active),
        Pattern::Graph { name, inner } => match name {
            TermPattern::Term(t) => solve(inner, eds.graph(t), eds, fixed),
            TermPattern::Var(v) => {
                let mut out = Vec::new();
                for n in eds.graph_names() {
                    for mut mu in solve(inner, eds.graph(&n), eds, fixed) {
                        if mu.get(v).is_some_and(|w| *w != n) {
                            continue;
                        }
                        mu.insert(v.clone(), n.clone());
                        out.push(mu);
                    }
                }
                out
            }
        },
        Pattern::Join(l, r) => {
            let (ls, rs) = (solve(l, active, eds, fixed), solve(r, active, eds, fixed));
            let mut out = Vec::new();
            for a in &ls {
                for b in &rs {
                    if compatible(a, b) {
                        let mut m = a.clone();
                        m.extend(b.iter().map(|(k, v)| (k.clone(), v.clone())));
                        out.push(m);
                    }
                }
            }
            out
        }
        Pattern::Union(l, r) => {
            let mut out = solve(l, active, eds, fixed);
            out.extend(solve(r, active, eds, fixed));
            out
        }
        Pattern::Filter { expr, inner } => solve(inner, active, eds, fixed)
            .into_iter()
            .filter(|mu| filter_passes(expr, &|name: &str| mu.get(name).or_else(|| fixed.get(name)).cloned()))
            .collect(),
        Pattern::NotExists { pattern, outer } | Pattern::Exists { pattern, outer } => {
            let negated = matches!(p, Pattern::NotExists { .. });
            solve(outer, active, eds, fixed)
                .into_iter()
                .filter(|mu| {
                    let mut env = fixed.clone();
                    env.extend(mu.iter().map(|(k, v)| (k.clone(), v.clone())));
                    let inner = substitute(pattern, &env);
                    solve(&inner, active, eds, &env).is_empty() == negated
                })
                .collect()
        }
    }
}

/// Enumerates assignments variable by variable over the terms seen in the
/// positions that variable occupies, checking each fully instantiated triple
/// pattern by membership.
fn solve_bgp(tps: &[TriplePattern], graph: &Graph) -> Vec<Mu> {
    let mut vars: Vec<Variable> = Vec::new();
    for tp in tps {
        for pos in tp.positions() {
            if let Some(v) = pos.as_var() {
                if !vars.contains(v) {
                    vars.push(v.clone());
                }
            }
        }
    }
    let domains: Vec<Vec<Term>> = vars
        .iter()
        .map(|v| {
            let mut dom: FxHashSet<&Term> = FxHashSet::default();
            for tp in tps {
                for t in graph.iter() {
                    if tp.subject.as_var() == Some(v) {
                        dom.insert(&t.subject);
                    }
                    if tp.predicate.as_var() == Some(v) {
                        dom.insert(&t.predicate);
                    }
                    if tp.object.as_var() == Some(v) {
                        dom.insert(&t.object);
                    }
                }
            }
            let mut dom: Vec<Term> = dom.into_iter().cloned().collect();
            dom.sort();
            dom
        })
        .collect();
    let mut out = Vec::new();
    let mut mu = Mu::new();
    enumerate(tps, graph, &vars, &domains, 0, &mut mu, &mut out);
    out
}

fn enumerate(
    tps: &[TriplePattern],
    graph: &Graph,
    vars: &[Variable],
    domains: &[Vec<Term>],
    depth: usize,
    mu: &mut Mu,
    out: &mut Vec<Mu>,
) {
    // Prune on every pattern whose variables are all assigned.
    for tp in tps {
        if let Some(holds) = instantiate(tp, mu).map(|t| t.is_some_and(|t| graph.contains(&t))) {
            if !holds {
                return;
            }
        }
    }
    if depth == vars.len() {
        out.push(mu.clone());
        return;
    }
    for value in &domains[depth] {
        mu.insert(vars[depth].clone(), value.clone());
        enumerate(tps, graph, vars, domains, depth + 1, mu, out);
    }
    mu.remove(&vars[depth]);
}

/// `None` while some variable is unassigned; `Some(None)` when the instance is
/// not a well-formed triple (it then cannot be in any graph).
fn instantiate(tp: &TriplePattern, mu: &Mu) -> Option<Option<Triple>> {
    let get = |t: &TermPattern| match t {
        TermPattern::Term(t) => Some(t.clone()),
        TermPattern::Var(v) => mu.get(v).cloned(),
    };
    let (s, p, o) = (get(&tp.subject)?, get(&tp.predicate)?, get(&tp.object)?);
    Some(Triple::checked(s, p, o).ok())
}
