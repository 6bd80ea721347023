//! SPARQL text for a query. Output uses full IRIs and explicit grouping, and
//! parses back to the same algebra.

use std::fmt::{self, Display, Formatter};

use super::{CompareOp, Expr, Pattern, Projection, ProjectionItem, Query, TermPattern, TriplePattern};

impl Display for Query {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        for (p, ns) in &self.prefixes {
            writeln!(f, "PREFIX {p}: <{ns}>")?;
        }
        f.write_str("SELECT ")?;
        if self.distinct {
            f.write_str("DISTINCT ")?;
        }
        match &self.projection {
            Projection::All => f.write_str("*")?,
            Projection::Items(items) => {
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    match item {
                        ProjectionItem::Var(v) => write!(f, "?{v}")?,
                        ProjectionItem::Expr { expr, alias } => write!(f, "({expr} AS ?{alias})")?,
                    }
                }
            }
        }
        f.write_str("\nWHERE ")?;
        write_group(f, &self.pattern)
    }
}

fn write_group(f: &mut Formatter<'_>, p: &Pattern) -> fmt::Result {
    f.write_str("{ ")?;
    match p {
        Pattern::Bgp(tps) => {
            for tp in tps {
                write!(f, "{tp} . ")?;
            }
        }
        Pattern::Graph { name, inner } => {
            write!(f, "GRAPH {name} ")?;
            write_group(f, inner)?;
            f.write_str(" ")?;
        }
        Pattern::Join(l, r) => {
            write_group(f, l)?;
            f.write_str(" ")?;
            write_group(f, r)?;
            f.write_str(" ")?;
        }
        Pattern::Union(l, r) => {
            write_group(f, l)?;
            f.write_str(" UNION ")?;
            write_group(f, r)?;
            f.write_str(" ")?;
        }
        Pattern::Filter { expr, inner } => {
            write_group(f, inner)?;
            write!(f, " FILTER ({expr}) ")?;
        }
        Pattern::NotExists { pattern, outer } => {
            write_group(f, outer)?;
            f.write_str(" FILTER NOT EXISTS ")?;
            write_group(f, pattern)?;
            f.write_str(" ")?;
        }
        Pattern::Exists { pattern, outer } => {
            write_group(f, outer)?;
            f.write_str(" FILTER EXISTS ")?;
            write_group(f, pattern)?;
            f.write_str(" ")?;
        }
    }
    f.write_str("}")
}

impl Display for TermPattern {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            TermPattern::Term(t) => write!(f, "{t}"),
            TermPattern::Var(v) => write!(f, "?{v}"),
        }
    }
}

impl Display for TriplePattern {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.subject, self.predicate, self.object)
    }
}

impl Display for CompareOp {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompareOp::Eq => "=",
            CompareOp::Ne => "!=",
            CompareOp::Lt => "<",
            CompareOp::Gt => ">",
            CompareOp::Le => "<=",
            CompareOp::Ge => ">=",
        })
    }
}

impl Display for Expr {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(v) => write!(f, "?{v}"),
            Expr::Const(t) => write!(f, "{t}"),
            Expr::Or(a, b) => write!(f, "({a} || {b})"),
            Expr::And(a, b) => write!(f, "({a} && {b})"),
            Expr::Not(a) => write!(f, "(!{a})"),
            Expr::Compare(op, a, b) => write!(f, "({a} {op} {b})"),
            Expr::Regex { text, pattern, flags: Some(fl) } => write!(f, "REGEX({text}, {pattern}, {fl})"),
            Expr::Regex { text, pattern, flags: None } => write!(f, "REGEX({text}, {pattern})"),
            Expr::Str(a) => write!(f, "STR({a})"),
            Expr::Datatype(a) => write!(f, "DATATYPE({a})"),
            Expr::Lang(a) => write!(f, "LANG({a})"),
            Expr::Bound(v) => write!(f, "BOUND(?{v})"),
        }
    }
}
