//! Filter expression semantics. An expression error (unbound variable, type
//! mismatch, bad regex) makes the enclosing filter reject the solution.

use std::cell::RefCell;

use regex::Regex;
use rustc_hash::FxHashMap;

use crate::model::lexical::{is_numeric_type, numeric_value};
use crate::model::{Literal, Term};
use crate::vocab::{rdf, xsd};

use super::{CompareOp, Expr};

#[derive(Debug)]
pub(crate) struct ExprError;

type Value = Result<Term, ExprError>;

/// Evaluates `expr`, resolving variables through `lookup`.
pub(crate) fn eval_expr(expr: &Expr, lookup: &dyn Fn(&str) -> Option<Term>) -> Value {
    match expr {
        Expr::Var(v) => lookup(v).ok_or(ExprError),
        Expr::Const(t) => Ok(t.clone()),
        Expr::Or(a, b) => {
            let (a, b) = (ebv_of(a, lookup), ebv_of(b, lookup));
            match (a, b) {
                (Ok(true), _) | (_, Ok(true)) => Ok(Term::boolean(true)),
                (Ok(false), Ok(false)) => Ok(Term::boolean(false)),
                _ => Err(ExprError),
            }
        }
        Expr::And(a, b) => {
            let (a, b) = (ebv_of(a, lookup), ebv_of(b, lookup));
            match (a, b) {
                (Ok(false), _) | (_, Ok(false)) => Ok(Term::boolean(false)),
                (Ok(true), Ok(true)) => Ok(Term::boolean(true)),
                _ => Err(ExprError),
            }
        }
        Expr::Not(a) => Ok(Term::boolean(!ebv_of(a, lookup)?)),
        Expr::Compare(op, a, b) => {
            let (a, b) = (eval_expr(a, lookup)?, eval_expr(b, lookup)?);
            compare(*op, &a, &b).map(Term::boolean)
        }
        Expr::Regex { text, pattern, flags } => {
            let text = eval_expr(text, lookup)?;
            let text = string_value(&text).ok_or(ExprError)?;
            let pattern = eval_expr(pattern, lookup)?;
            let pattern = string_value(&pattern).ok_or(ExprError)?;
            let flags = match flags {
                Some(f) => string_value(&eval_expr(f, lookup)?).ok_or(ExprError)?.to_owned(),
                None => String::new(),
            };
            with_regex(pattern, &flags, |re| re.is_match(text)).map(Term::boolean)
        }
        Expr::Str(a) => {
            let t = eval_expr(a, lookup)?;
            t.lexical_str().map(Term::string).ok_or(ExprError)
        }
        Expr::Datatype(a) => match eval_expr(a, lookup)? {
            Term::Literal(l) => Ok(Term::iri(l.datatype())),
            _ => Err(ExprError),
        },
        Expr::Lang(a) => match eval_expr(a, lookup)? {
            Term::Literal(l) => Ok(Term::string(l.language().unwrap_or(""))),
            _ => Err(ExprError),
        },
        Expr::Bound(v) => Ok(Term::boolean(lookup(v).is_some())),
    }
}

/// True only when the expression evaluates without error to a true effective boolean value.
pub(crate) fn filter_passes(expr: &Expr, lookup: &dyn Fn(&str) -> Option<Term>) -> bool {
    matches!(ebv_of(expr, lookup), Ok(true))
}

fn ebv_of(expr: &Expr, lookup: &dyn Fn(&str) -> Option<Term>) -> Result<bool, ExprError> {
    ebv(&eval_expr(expr, lookup)?)
}

fn ebv(t: &Term) -> Result<bool, ExprError> {
    let Term::Literal(l) = t else { return Err(ExprError) };
    if l.datatype() == xsd::BOOLEAN {
        return match l.lexical() {
            "true" | "1" => Ok(true),
            "false" | "0" => Ok(false),
            _ => Err(ExprError),
        };
    }
    if is_numeric_type(l.datatype()) {
        return numeric_value(l).map(|v| v != 0.0).ok_or(ExprError);
    }
    if is_string(l) {
        return Ok(!l.lexical().is_empty());
    }
    Err(ExprError)
}

fn is_string(l: &Literal) -> bool {
    l.datatype() == xsd::STRING || l.datatype() == rdf::LANG_STRING
}

fn string_value(t: &Term) -> Option<&str> {
    match t {
        Term::Literal(l) if is_string(l) => Some(l.lexical()),
        _ => None,
    }
}

fn compare(op: CompareOp, a: &Term, b: &Term) -> Result<bool, ExprError> {
    let numeric = |t: &Term| t.as_literal().filter(|l| is_numeric_type(l.datatype())).map(numeric_value);
    match (numeric(a), numeric(b)) {
        (Some(x), Some(y)) => {
            let (x, y) = (x.ok_or(ExprError)?, y.ok_or(ExprError)?);
            Ok(match op {
                CompareOp::Eq => x == y,
                CompareOp::Ne => x != y,
                CompareOp::Lt => x < y,
                CompareOp::Gt => x > y,
                CompareOp::Le => x <= y,
                CompareOp::Ge => x >= y,
            })
        }
        _ => match op {
            CompareOp::Eq => Ok(a == b),
            CompareOp::Ne => Ok(a != b),
            _ => Err(ExprError),
        },
    }
}

/// Builds a regex from a SPARQL/SHACL pattern and flag string (`i`, `m`, `s`, `x`).
pub(crate) fn compile_regex(pattern: &str, flags: &str) -> Result<Regex, String> {
    let mut inline = String::new();
    for c in flags.chars() {
        match c {
            'i' | 'm' | 's' | 'x' => {
                if !inline.contains(c) {
                    inline.push(c);
                }
            }
            other => return Err(format!("unsupported regex flag {other:?}")),
        }
    }
    let source = if inline.is_empty() { pattern.to_owned() } else { format!("(?{inline}){pattern}") };
    Regex::new(&source).map_err(|e| e.to_string())
}

thread_local! {
    static REGEX_CACHE: RefCell<FxHashMap<(String, String), Option<Regex>>> = RefCell::new(FxHashMap::default());
}

fn with_regex<R>(pattern: &str, flags: &str, f: impl FnOnce(&Regex) -> R) -> Result<R, ExprError> {
    REGEX_CACHE.with(|cache| {
        let mut cache = cache.borrow_mut();
        if cache.len() > 1024 {
            cache.clear();
        }
        let re = cache
            .entry((pattern.to_owned(), flags.to_owned()))
            .or_insert_with(|| compile_regex(pattern, flags).ok());
        re.as_ref().map(f).ok_or(ExprError)
    })
}
