//! The SELECT fragment of SPARQL used by SHACL-SPARQL constraints.
//!
//! Supported: `PREFIX`, `SELECT [DISTINCT]` with variables, `*` or
//! `(expr AS ?v)`, basic graph patterns, `GRAPH`, `UNION`, nested groups,
//! `FILTER`, `FILTER EXISTS` and `FILTER NOT EXISTS`. Expressions cover
//! comparisons, `&&`/`||`/`!`, `regex`, `str`, `datatype`, `lang` and `bound`.
//!
//! Patterns are evaluated against an [`EvaluationDataset`]: bare triple
//! patterns see its default graph, `GRAPH <iri>` a named graph, and
//! `GRAPH ?g` every named graph including `shds:default`.

mod eval;
mod expr;
pub mod oracle;
mod parser;
mod print;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::model::Term;

pub use crate::ds::EvaluationDataset;
pub use eval::PreparedQuery;
pub(crate) use expr::compile_regex;
pub use oracle::{evaluate_oracle, OracleError, ORACLE_MAX_TRIPLES};
pub use parser::parse_query;

/// A variable name without the leading `?` or `$`.
pub type Variable = Arc<str>;

/// Initial bindings, e.g. `this` → focus node.
pub type Bindings = BTreeMap<String, Term>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TermPattern {
    Term(Term),
    Var(Variable),
}

impl TermPattern {
    pub fn var(name: &str) -> Self {
        TermPattern::Var(Arc::from(name))
    }

    pub fn as_var(&self) -> Option<&Variable> {
        match self {
            TermPattern::Var(v) => Some(v),
            TermPattern::Term(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TriplePattern {
    pub subject: TermPattern,
    pub predicate: TermPattern,
    pub object: TermPattern,
}

impl TriplePattern {
    pub fn positions(&self) -> [&TermPattern; 3] {
        [&self.subject, &self.predicate, &self.object]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    Bgp(Vec<TriplePattern>),
    Graph { name: TermPattern, inner: Box<Pattern> },
    Join(Box<Pattern>, Box<Pattern>),
    Union(Box<Pattern>, Box<Pattern>),
    Filter { expr: Expr, inner: Box<Pattern> },
    /// Solutions of `outer` for which `pattern`, with those bindings substituted, has none.
    NotExists { pattern: Box<Pattern>, outer: Box<Pattern> },
    Exists { pattern: Box<Pattern>, outer: Box<Pattern> },
}

impl Pattern {
    /// Variables in order of first occurrence. Variables that occur only inside
    /// `EXISTS`/`NOT EXISTS` or filter expressions are not in scope and excluded.
    pub fn in_scope_variables(&self) -> Vec<Variable> {
        let mut out = Vec::new();
        self.collect_scope(&mut out);
        out
    }

    fn collect_scope(&self, out: &mut Vec<Variable>) {
        let mut push = |v: &Variable| {
            if !out.contains(v) {
                out.push(v.clone());
            }
        };
        match self {
            Pattern::Bgp(tps) => {
                for tp in tps {
                    for pos in tp.positions() {
                        if let Some(v) = pos.as_var() {
                            push(v);
                        }
                    }
                }
            }
            Pattern::Graph { name, inner } => {
                if let Some(v) = name.as_var() {
                    push(v);
                }
                inner.collect_scope(out);
            }
            Pattern::Join(l, r) | Pattern::Union(l, r) => {
                l.collect_scope(out);
                r.collect_scope(out);
            }
            Pattern::Filter { inner, .. } => inner.collect_scope(out),
            Pattern::NotExists { outer, .. } | Pattern::Exists { outer, .. } => outer.collect_scope(out),
        }
    }

    /// True when no filter of any kind occurs in the pattern.
    pub fn is_filter_free(&self) -> bool {
        match self {
            Pattern::Bgp(_) => true,
            Pattern::Graph { inner, .. } => inner.is_filter_free(),
            Pattern::Join(l, r) | Pattern::Union(l, r) => l.is_filter_free() && r.is_filter_free(),
            Pattern::Filter { .. } | Pattern::NotExists { .. } | Pattern::Exists { .. } => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Var(Variable),
    Const(Term),
    Or(Box<Expr>, Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Not(Box<Expr>),
    Compare(CompareOp, Box<Expr>, Box<Expr>),
    Regex { text: Box<Expr>, pattern: Box<Expr>, flags: Option<Box<Expr>> },
    Str(Box<Expr>),
    Datatype(Box<Expr>),
    Lang(Box<Expr>),
    Bound(Variable),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CompareOp {
    Eq,
    Ne,
    Lt,
    Gt,
    Le,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProjectionItem {
    Var(Variable),
    Expr { expr: Expr, alias: Variable },
}

impl ProjectionItem {
    pub fn variable(&self) -> &Variable {
        match self {
            ProjectionItem::Var(v) | ProjectionItem::Expr { alias: v, .. } => v,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Projection {
    All,
    Items(Vec<ProjectionItem>),
}

/// A parsed SELECT query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    pub prefixes: BTreeMap<String, String>,
    pub distinct: bool,
    pub projection: Projection,
    pub pattern: Pattern,
}

impl Query {
    /// Output variables in projection order.
    pub fn variables(&self) -> Vec<Variable> {
        match &self.projection {
            Projection::All => self.pattern.in_scope_variables(),
            Projection::Items(items) => items.iter().map(|i| i.variable().clone()).collect(),
        }
    }
}

/// Query results: one row per solution, columns in [`Solutions::variables`] order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solutions {
    pub variables: Vec<Variable>,
    pub rows: Vec<Vec<Option<Term>>>,
}

impl Solutions {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column(&self, var: &str) -> Option<usize> {
        self.variables.iter().position(|v| &**v == var)
    }

    pub fn get(&self, row: usize, var: &str) -> Option<&Term> {
        self.rows.get(row)?.get(self.column(var)?)?.as_ref()
    }

    /// Rows sorted, for multiset comparison.
    pub fn canonical(&self) -> Vec<Vec<Option<Term>>> {
        let mut rows = self.rows.clone();
        rows.sort();
        rows
    }

    /// Tab-separated rendering with a header line.
    pub fn to_tsv(&self) -> String {
        let mut out: String = self.variables.iter().map(|v| format!("?{v}")).collect::<Vec<_>>().join("\t");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.as_ref().map(Term::to_string).unwrap_or_default()).collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }
}

/// Evaluates `query` with `pre_bound` variables fixed before evaluation.
pub fn evaluate(query: &Query, eds: &EvaluationDataset<'_>, pre_bound: &Bindings) -> Solutions {
    PreparedQuery::new(query).evaluate(eds, pre_bound)
}
