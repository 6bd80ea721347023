use std::collections::BTreeMap;
use std::sync::Arc;

use crate::io::{Cursor, SyntaxError, SyntaxErrorKind};
use crate::model::{is_valid_iri, Literal, Term};
use crate::vocab::{rdf, xsd};

use super::{CompareOp, Expr, Pattern, Projection, ProjectionItem, Query, TermPattern, TriplePattern, Variable};

/// Parses a SELECT query. Constructs outside the supported fragment
/// (OPTIONAL, MINUS, BIND, VALUES, SERVICE, FROM, solution modifiers,
/// property paths, other functions) fail with [`SyntaxErrorKind::Unsupported`]
/// naming the construct.
pub fn parse_query(text: &str) -> Result<Query, SyntaxError> {
    let mut p = QueryParser { cur: Cursor::new(text), prefixes: BTreeMap::new() };
    p.query()
}

const UNSUPPORTED_PATTERN_KEYWORDS: &[&str] = &["OPTIONAL", "MINUS", "BIND", "VALUES", "SERVICE", "SELECT"];
const UNSUPPORTED_MODIFIERS: &[&str] = &["GROUP", "HAVING", "ORDER", "LIMIT", "OFFSET", "VALUES"];

enum FilterItem {
    Expr(Expr),
    NotExists(Pattern),
    Exists(Pattern),
}

struct QueryParser<'a> {
    cur: Cursor<'a>,
    prefixes: BTreeMap<String, String>,
}

impl QueryParser<'_> {
    fn unsupported(&self, what: &str) -> SyntaxError {
        self.cur.error(SyntaxErrorKind::Unsupported(what.to_owned()))
    }

    fn syntax(&self, msg: impl Into<String>) -> SyntaxError {
        self.cur.error(SyntaxErrorKind::Syntax(msg.into()))
    }

    fn query(&mut self) -> Result<Query, SyntaxError> {
        self.prologue()?;
        self.cur.skip_ws();
        for form in ["ASK", "CONSTRUCT", "DESCRIBE"] {
            if self.cur.eat_keyword(form) {
                return Err(self.unsupported(&format!("{form} queries")));
            }
        }
        if !self.cur.eat_keyword("SELECT") {
            return Err(self.cur.unexpected("SELECT"));
        }
        self.cur.skip_ws();
        let distinct = self.cur.eat_keyword("DISTINCT");
        self.cur.skip_ws();
        if self.cur.eat_keyword("REDUCED") {
            return Err(self.unsupported("REDUCED"));
        }
        let projection = self.projection()?;
        self.cur.skip_ws();
        if self.cur.eat_keyword("FROM") {
            return Err(self.unsupported("FROM"));
        }
        self.cur.eat_keyword("WHERE");
        self.cur.skip_ws();
        let pattern = self.group()?;
        self.cur.skip_ws();
        for kw in UNSUPPORTED_MODIFIERS {
            if self.cur.eat_keyword(kw) {
                let what = if matches!(*kw, "GROUP" | "ORDER") { format!("{kw} BY") } else { (*kw).to_owned() };
                return Err(self.unsupported(&what));
            }
        }
        if !self.cur.is_eof() {
            return Err(self.cur.unexpected("end of query"));
        }
        let query = Query { prefixes: std::mem::take(&mut self.prefixes), distinct, projection, pattern };
        check_projection(&query).map_err(|msg| self.syntax(msg))?;
        Ok(query)
    }

    fn prologue(&mut self) -> Result<(), SyntaxError> {
        loop {
            self.cur.skip_ws();
            if self.cur.eat_keyword("PREFIX") {
                self.cur.skip_ws();
                let prefix = self.cur.read_pname_prefix()?;
                self.cur.skip_ws();
                if self.cur.peek() != Some('<') {
                    return Err(self.cur.unexpected("IRI"));
                }
                let iri = self.iriref()?;
                self.prefixes.insert(prefix, iri);
            } else if self.cur.eat_keyword("BASE") {
                return Err(self.unsupported("BASE"));
            } else {
                return Ok(());
            }
        }
    }

    fn projection(&mut self) -> Result<Projection, SyntaxError> {
        if self.cur.eat('*') {
            return Ok(Projection::All);
        }
        let mut items = Vec::new();
        loop {
            self.cur.skip_ws();
            match self.cur.peek() {
                Some('?' | '$') => items.push(ProjectionItem::Var(self.var()?)),
                Some('(') => {
                    self.cur.bump();
                    let expr = self.expr()?;
                    self.cur.skip_ws();
                    if !self.cur.eat_keyword("AS") {
                        return Err(self.cur.unexpected("AS"));
                    }
                    self.cur.skip_ws();
                    let alias = self.var()?;
                    self.cur.skip_ws();
                    self.cur.expect(')')?;
                    items.push(ProjectionItem::Expr { expr, alias });
                }
                _ => break,
            }
        }
        if items.is_empty() {
            return Err(self.cur.unexpected("projection variable or '*'"));
        }
        Ok(Projection::Items(items))
    }

    fn group(&mut self) -> Result<Pattern, SyntaxError> {
        self.cur.skip_ws();
        self.cur.expect('{')?;
        let mut acc: Option<Pattern> = None;
        let mut bgp: Vec<TriplePattern> = Vec::new();
        let mut filters = Vec::new();
        let flush = |acc: &mut Option<Pattern>, bgp: &mut Vec<TriplePattern>| {
            if !bgp.is_empty() {
                join_into(acc, Pattern::Bgp(std::mem::take(bgp)));
            }
        };
        loop {
            self.cur.skip_ws();
            if self.cur.eat('}') {
                break;
            }
            if self.cur.is_eof() {
                return Err(self.cur.unexpected("'}'"));
            }
            if self.cur.eat('.') {
                continue;
            }
            if self.cur.eat_keyword("FILTER") {
                filters.push(self.filter()?);
                continue;
            }
            if self.cur.eat_keyword("GRAPH") {
                flush(&mut acc, &mut bgp);
                self.cur.skip_ws();
                let name = match self.cur.peek() {
                    Some('?' | '$') => TermPattern::Var(self.var()?),
                    _ => TermPattern::Term(self.iri()?),
                };
                let inner = self.group()?;
                join_into(&mut acc, Pattern::Graph { name, inner: Box::new(inner) });
                continue;
            }
            if self.cur.peek() == Some('{') {
                flush(&mut acc, &mut bgp);
                let mut p = self.group()?;
                loop {
                    self.cur.skip_ws();
                    if !self.cur.eat_keyword("UNION") {
                        break;
                    }
                    let r = self.group()?;
                    p = Pattern::Union(Box::new(p), Box::new(r));
                }
                join_into(&mut acc, p);
                continue;
            }
            for kw in UNSUPPORTED_PATTERN_KEYWORDS {
                if self.cur.eat_keyword(kw) {
                    let what = if *kw == "SELECT" { "subqueries" } else { kw };
                    return Err(self.unsupported(what));
                }
            }
            self.triples_same_subject(&mut bgp)?;
            self.cur.skip_ws();
            if !matches!(self.cur.peek(), Some('.' | '}')) {
                let keyword_next = ["FILTER", "GRAPH"].iter().chain(UNSUPPORTED_PATTERN_KEYWORDS).any(|kw| {
                    let mut probe = self.cur.clone();
                    probe.eat_keyword(kw)
                });
                if self.cur.peek() == Some('{') || keyword_next {
                    continue;
                }
                return Err(self.cur.unexpected("'.' or '}'"));
            }
        }
        flush(&mut acc, &mut bgp);
        let mut pattern = acc.unwrap_or(Pattern::Bgp(Vec::new()));
        for f in filters {
            let outer = Box::new(pattern);
            pattern = match f {
                FilterItem::Expr(expr) => Pattern::Filter { expr, inner: outer },
                FilterItem::NotExists(p) => Pattern::NotExists { pattern: Box::new(p), outer },
                FilterItem::Exists(p) => Pattern::Exists { pattern: Box::new(p), outer },
            };
        }
        Ok(pattern)
    }

    fn filter(&mut self) -> Result<FilterItem, SyntaxError> {
        self.cur.skip_ws();
        if self.cur.eat_keyword("NOT") {
            self.cur.skip_ws();
            if !self.cur.eat_keyword("EXISTS") {
                return Err(self.cur.unexpected("EXISTS"));
            }
            return Ok(FilterItem::NotExists(self.group()?));
        }
        if self.cur.eat_keyword("EXISTS") {
            return Ok(FilterItem::Exists(self.group()?));
        }
        if self.cur.peek() == Some('(') {
            self.cur.bump();
            let e = self.expr()?;
            self.cur.skip_ws();
            self.cur.expect(')')?;
            return Ok(FilterItem::Expr(e));
        }
        if self.cur.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            return Ok(FilterItem::Expr(self.primary()?));
        }
        Err(self.cur.unexpected("filter expression"))
    }

    fn triples_same_subject(&mut self, out: &mut Vec<TriplePattern>) -> Result<(), SyntaxError> {
        let subject = self.node("subject")?;
        loop {
            self.cur.skip_ws();
            let predicate = self.verb()?;
            loop {
                self.cur.skip_ws();
                let object = self.node("object")?;
                out.push(TriplePattern { subject: subject.clone(), predicate: predicate.clone(), object });
                self.cur.skip_ws();
                if !self.cur.eat(',') {
                    break;
                }
            }
            self.cur.skip_ws();
            if !self.cur.eat(';') {
                return Ok(());
            }
            loop {
                self.cur.skip_ws();
                if !self.cur.eat(';') {
                    break;
                }
            }
            self.cur.skip_ws();
            if matches!(self.cur.peek(), Some('.' | '}')) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> Result<TermPattern, SyntaxError> {
        if matches!(self.cur.peek(), Some('^' | '(' | '!')) {
            return Err(self.unsupported("property paths"));
        }
        let verb = if self.cur.peek() == Some('a') && !self.cur.peek_nth(1).is_some_and(|c| c.is_alphanumeric() || c == ':' || c == '_' || c == '-') {
            self.cur.bump();
            TermPattern::Term(Term::iri(rdf::TYPE))
        } else {
            match self.cur.peek() {
                Some('?' | '$') => TermPattern::Var(self.var()?),
                _ => TermPattern::Term(self.iri()?),
            }
        };
        match self.cur.peek() {
            Some('/' | '|' | '*' | '+') => Err(self.unsupported("property paths")),
            Some('?') if !self.cur.peek_nth(1).is_some_and(is_var_char) => Err(self.unsupported("property paths")),
            _ => Ok(verb),
        }
    }

    fn node(&mut self, position: &str) -> Result<TermPattern, SyntaxError> {
        match self.cur.peek() {
            Some('?' | '$') => Ok(TermPattern::Var(self.var()?)),
            Some('[' | '(') => Err(self.unsupported("blank nodes and collections in query patterns")),
            Some('_') if self.cur.peek_nth(1) == Some(':') => Err(self.unsupported("blank nodes in query patterns")),
            Some(_) => match self.constant()? {
                Some(t) => Ok(TermPattern::Term(t)),
                None => Err(self.cur.unexpected(position)),
            },
            None => Err(self.cur.unexpected(position)),
        }
    }

    /// IRI, prefixed name, literal, number or boolean; `None` if none starts here.
    fn constant(&mut self) -> Result<Option<Term>, SyntaxError> {
        match self.cur.peek() {
            Some('<') => self.iri().map(Some),
            Some('"' | '\'') => {
                let lexical = self.cur.read_string(true)?;
                if self.cur.eat('@') {
                    let lang = self.cur.read_langtag()?;
                    Ok(Some(Term::Literal(Literal::lang(lexical, &lang))))
                } else if self.cur.eat_str("^^") {
                    let dt = self.iri()?;
                    Ok(Some(Term::Literal(Literal::typed(lexical, dt.as_iri().unwrap_or_default()))))
                } else {
                    Ok(Some(Term::Literal(Literal::string(lexical))))
                }
            }
            Some(c) if c.is_ascii_digit() || c == '+' || c == '-' || (c == '.' && self.cur.peek_nth(1).is_some_and(|d| d.is_ascii_digit())) => {
                let (lexical, decimal) = self.cur.read_number()?;
                Ok(Some(Term::typed(&lexical, if decimal { xsd::DECIMAL } else { xsd::INTEGER })))
            }
            _ => {
                if self.cur.eat_keyword("true") {
                    return Ok(Some(Term::boolean(true)));
                }
                if self.cur.eat_keyword("false") {
                    return Ok(Some(Term::boolean(false)));
                }
                if self.cur.peek().is_some_and(|c| c.is_alphabetic() || c == ':') {
                    return self.iri().map(Some);
                }
                Ok(None)
            }
        }
    }

    fn iriref(&mut self) -> Result<String, SyntaxError> {
        let pos = self.cur.position();
        let iri = self.cur.read_iriref()?;
        if !is_valid_iri(&iri) {
            return Err(self.cur.error_at(pos, SyntaxErrorKind::InvalidIri(iri)));
        }
        Ok(iri)
    }

    fn iri(&mut self) -> Result<Term, SyntaxError> {
        if self.cur.peek() == Some('<') {
            return Ok(Term::iri(&self.iriref()?));
        }
        let pos = self.cur.position();
        let prefix = self.cur.read_pname_prefix()?;
        let local = self.cur.read_pname_local()?;
        let Some(ns) = self.prefixes.get(&prefix) else {
            return Err(self.cur.error_at(pos, SyntaxErrorKind::UndefinedPrefix(prefix)));
        };
        let iri = format!("{ns}{local}");
        if !is_valid_iri(&iri) {
            return Err(self.cur.error_at(pos, SyntaxErrorKind::InvalidIri(iri)));
        }
        Ok(Term::iri(&iri))
    }

    fn var(&mut self) -> Result<Variable, SyntaxError> {
        if !matches!(self.cur.peek(), Some('?' | '$')) {
            return Err(self.cur.unexpected("variable"));
        }
        self.cur.bump();
        let mut name = String::new();
        while let Some(c) = self.cur.peek().filter(|&c| is_var_char(c)) {
            name.push(c);
            self.cur.bump();
        }
        if name.is_empty() {
            return Err(self.cur.unexpected("variable name"));
        }
        Ok(Arc::from(name))
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut left = self.and_expr()?;
        loop {
            self.cur.skip_ws();
            if !self.cur.eat_str("||") {
                return Ok(left);
            }
            let right = self.and_expr()?;
            left = Expr::Or(Box::new(left), Box::new(right));
        }
    }

    fn and_expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut left = self.relational()?;
        loop {
            self.cur.skip_ws();
            if !self.cur.eat_str("&&") {
                return Ok(left);
            }
            let right = self.relational()?;
            left = Expr::And(Box::new(left), Box::new(right));
        }
    }

    fn relational(&mut self) -> Result<Expr, SyntaxError> {
        let left = self.unary()?;
        self.cur.skip_ws();
        let op = if self.cur.eat_str("!=") {
            CompareOp::Ne
        } else if self.cur.eat_str("<=") {
            CompareOp::Le
        } else if self.cur.eat_str(">=") {
            CompareOp::Ge
        } else if self.cur.eat('=') {
            CompareOp::Eq
        } else if self.cur.eat('<') {
            CompareOp::Lt
        } else if self.cur.eat('>') {
            CompareOp::Gt
        } else {
            if matches!(self.cur.peek(), Some('+' | '-' | '*' | '/')) {
                return Err(self.unsupported("arithmetic expressions"));
            }
            if self.cur.eat_keyword("IN") || self.cur.eat_keyword("NOT") {
                return Err(self.unsupported("IN / NOT IN"));
            }
            return Ok(left);
        };
        let right = self.unary()?;
        Ok(Expr::Compare(op, Box::new(left), Box::new(right)))
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        self.cur.skip_ws();
        if self.cur.peek() == Some('!') && self.cur.peek_nth(1) != Some('=') {
            self.cur.bump();
            return Ok(Expr::Not(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr, SyntaxError> {
        self.cur.skip_ws();
        match self.cur.peek() {
            Some('(') => {
                self.cur.bump();
                let e = self.expr()?;
                self.cur.skip_ws();
                self.cur.expect(')')?;
                return Ok(e);
            }
            Some('?' | '$') => return Ok(Expr::Var(self.var()?)),
            _ => {}
        }
        if self.cur.eat_keyword("NOT") || self.cur.eat_keyword("EXISTS") {
            return Err(self.unsupported("EXISTS inside expressions"));
        }
        if let Some(name) = self.function_name() {
            return self.call(&name);
        }
        match self.constant()? {
            Some(t) => {
                self.cur.skip_ws();
                if self.cur.peek() == Some('(') {
                    return Err(self.unsupported("IRI function calls"));
                }
                Ok(Expr::Const(t))
            }
            None => Err(self.cur.unexpected("expression")),
        }
    }

    /// A bare identifier directly followed (after spaces) by `(`.
    fn function_name(&mut self) -> Option<String> {
        let rest = self.cur.rest();
        let len = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(rest.len());
        if len == 0 || !rest.as_bytes()[0].is_ascii_alphabetic() {
            return None;
        }
        if !rest[len..].trim_start().starts_with('(') {
            return None;
        }
        let name = rest[..len].to_owned();
        for _ in 0..len {
            self.cur.bump();
        }
        Some(name)
    }

    fn call(&mut self, name: &str) -> Result<Expr, SyntaxError> {
        let upper = name.to_ascii_uppercase();
        self.cur.skip_ws();
        self.cur.expect('(')?;
        let expr = match upper.as_str() {
            "BOUND" => {
                self.cur.skip_ws();
                Expr::Bound(self.var()?)
            }
            "REGEX" => {
                let text = self.expr()?;
                self.comma()?;
                let pattern = self.expr()?;
                self.cur.skip_ws();
                let flags = if self.cur.eat(',') { Some(Box::new(self.expr()?)) } else { None };
                Expr::Regex { text: Box::new(text), pattern: Box::new(pattern), flags }
            }
            "STR" => Expr::Str(Box::new(self.expr()?)),
            "DATATYPE" => Expr::Datatype(Box::new(self.expr()?)),
            "LANG" => Expr::Lang(Box::new(self.expr()?)),
            _ => return Err(self.unsupported(&format!("function {upper}"))),
        };
        self.cur.skip_ws();
        self.cur.expect(')')?;
        Ok(expr)
    }

    fn comma(&mut self) -> Result<(), SyntaxError> {
        self.cur.skip_ws();
        self.cur.expect(',')
    }
}

fn is_var_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\u{B7}'
}

fn join_into(acc: &mut Option<Pattern>, p: Pattern) {
    *acc = Some(match acc.take() {
        None => p,
        Some(prev) => Pattern::Join(Box::new(prev), Box::new(p)),
    });
}

fn check_projection(query: &Query) -> Result<(), String> {
    let Projection::Items(items) = &query.projection else {
        return Ok(());
    };
    let scope = query.pattern.in_scope_variables();
    let mut seen: Vec<&Variable> = Vec::new();
    for item in items {
        let v = item.variable();
        if seen.contains(&v) {
            return Err(format!("variable ?{v} projected twice"));
        }
        seen.push(v);
        match item {
            ProjectionItem::Var(v) if !scope.contains(v) => {
                return Err(format!("projected variable ?{v} does not occur in the pattern"));
            }
            ProjectionItem::Expr { alias, .. } if scope.contains(alias) => {
                return Err(format!("?{alias} is already bound in the pattern"));
            }
            _ => {}
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const ETCS_QUERY: &str = r#"
PREFIX era: <http://data.europa.eu/949/>
PREFIX skos: <http://www.w3.org/2004/02/skos/core#>
SELECT $this ?concept
WHERE {
  $this era:etcsMVersion ?concept .
  era:etcsMVersion era:inSkosConceptScheme ?conceptScheme .
  FILTER NOT EXISTS { ?concept skos:inScheme ?conceptScheme . }
}"#;

    #[test]
    fn not_exists_over_two_triple_bgp() {
        let q = parse_query(ETCS_QUERY).unwrap();
        let Pattern::NotExists { pattern, outer } = &q.pattern else { panic!("{:?}", q.pattern) };
        assert!(matches!(&**outer, Pattern::Bgp(tps) if tps.len() == 2));
        assert!(matches!(&**pattern, Pattern::Bgp(tps) if tps.len() == 1));
        assert_eq!(q.variables().iter().map(|v| &**v).collect::<Vec<_>>(), ["this", "concept"]);
    }

    #[test]
    fn graph_blocks_join() {
        let q = parse_query(
            "PREFIX g: <http://g/> SELECT DISTINCT $this WHERE { $this <http://p> ?c . GRAPH g:onto { <http://p> <http://q> ?s } FILTER NOT EXISTS { GRAPH g:skos { ?c <http://r> ?s } } }",
        )
        .unwrap();
        assert!(q.distinct);
        let Pattern::NotExists { pattern, outer } = &q.pattern else { panic!() };
        assert!(matches!(&**pattern, Pattern::Graph { .. }));
        assert!(matches!(&**outer, Pattern::Join(l, r) if matches!(**l, Pattern::Bgp(_)) && matches!(**r, Pattern::Graph { .. })));
    }

    #[test]
    fn union_and_filters() {
        let q = parse_query("SELECT * { { ?s ?p ?o } UNION { ?s ?p 1 } FILTER (?o > 3 && !bound(?x)) FILTER regex(str(?s), \"^a\", \"i\") }").unwrap();
        assert_eq!(q.projection, Projection::All);
        let Pattern::Filter { inner, .. } = &q.pattern else { panic!() };
        assert!(matches!(&**inner, Pattern::Filter { inner, .. } if matches!(**inner, Pattern::Union(..))));
    }

    #[test]
    fn unsupported_constructs_are_named() {
        for (text, what) in [
            ("SELECT * { ?s ?p ?o OPTIONAL { ?s ?q ?r } }", "OPTIONAL"),
            ("SELECT * { ?s ?p ?o MINUS { ?s ?q ?r } }", "MINUS"),
            ("SELECT * { BIND(1 AS ?x) }", "BIND"),
            ("SELECT * { VALUES ?x { 1 } }", "VALUES"),
            ("SELECT * { SERVICE <http://x> { ?s ?p ?o } }", "SERVICE"),
            ("SELECT * FROM <http://x> { ?s ?p ?o }", "FROM"),
            ("SELECT * { ?s ?p ?o } ORDER BY ?s", "ORDER BY"),
            ("SELECT * { ?s ?p ?o } LIMIT 5", "LIMIT"),
            ("SELECT * { ?s ?p ?o } GROUP BY ?s", "GROUP BY"),
            ("SELECT * { ?s <http://a>/<http://b> ?o }", "property paths"),
            ("SELECT * { ?s ?p ?o FILTER(CONTAINS(?o, \"x\")) }", "function CONTAINS"),
            ("ASK { ?s ?p ?o }", "ASK queries"),
        ] {
            let err = parse_query(text).unwrap_err();
            match err.kind {
                SyntaxErrorKind::Unsupported(w) => assert_eq!(w, what, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = parse_query("SELECT ?x\nWHERE { ?x ex:p ?y }").unwrap_err();
        assert_eq!((err.line, err.column), (2, 12));
        assert!(matches!(err.kind, SyntaxErrorKind::UndefinedPrefix(_)));
        assert!(parse_query("SELECT ?z { ?x ?p ?y }").is_err());
        assert!(parse_query("SELECT ?x { ?x ?p ?y ").is_err());
    }

    #[test]
    fn dollar_and_question_mark_are_one_variable() {
        let q = parse_query("SELECT ?this { $this ?p ?o }").unwrap();
        assert_eq!(q.pattern.in_scope_variables().len(), 3);
    }
}
