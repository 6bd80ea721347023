//! Turtle and TriG.
//!
//! Supported: `@prefix`/`PREFIX`, a leading `@base`/`BASE`, prefixed names, `a`,
//! object and predicate lists, blank-node property lists, collections, string
//! literals in all quote forms, integers, decimals, booleans, `^^` datatypes and
//! language tags. TriG adds `GRAPH <g> { }`, `<g> { }` and `{ }` blocks.
//! Not supported: exponent doubles, mid-document base changes, RDF-star, and
//! blank-node graph labels.

use url::Url;

use crate::model::{Dataset, Literal, Quad, Term};
use crate::vocab::{rdf, xsd};

use super::{Cursor, ParseOptions, ParsedDataset, ParsedGraph, PrefixMap, SyntaxError, SyntaxErrorKind};

pub fn parse_turtle(text: &str, base: Option<&str>) -> Result<ParsedGraph, SyntaxError> {
    parse_turtle_with(text, &ParseOptions { base: base.map(str::to_owned), ..Default::default() })
}

pub fn parse_turtle_with(text: &str, options: &ParseOptions) -> Result<ParsedGraph, SyntaxError> {
    let mut parser = Parser::new(text, options, false)?;
    parser.document()?;
    let Parser { mut dataset, prefixes, .. } = parser;
    Ok(ParsedGraph { graph: std::mem::take(dataset.default_graph_mut()), prefixes })
}

pub fn parse_trig(text: &str) -> Result<ParsedDataset, SyntaxError> {
    parse_trig_with(text, &ParseOptions::default())
}

/// Repeated blocks for the same graph name merge; empty blocks still create the graph.
pub fn parse_trig_with(text: &str, options: &ParseOptions) -> Result<ParsedDataset, SyntaxError> {
    let mut parser = Parser::new(text, options, true)?;
    parser.document()?;
    Ok(ParsedDataset { dataset: parser.dataset, prefixes: parser.prefixes })
}

struct Parser<'a> {
    cur: Cursor<'a>,
    trig: bool,
    base: Option<Url>,
    base_seen: bool,
    statements_seen: bool,
    prefixes: PrefixMap,
    blank_prefix: String,
    anon: usize,
    dataset: Dataset,
    graph: Option<Term>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, options: &ParseOptions, trig: bool) -> Result<Self, SyntaxError> {
        let cur = Cursor::new(text);
        let base = match &options.base {
            Some(b) => Some(Url::parse(b).map_err(|_| cur.error(SyntaxErrorKind::InvalidIri(b.clone())))?),
            None => None,
        };
        Ok(Parser {
            cur,
            trig,
            base,
            base_seen: false,
            statements_seen: false,
            prefixes: PrefixMap::new(),
            blank_prefix: options.blank_scope.prefix(),
            anon: 0,
            dataset: Dataset::new(),
            graph: None,
        })
    }

    fn document(&mut self) -> Result<(), SyntaxError> {
        loop {
            self.cur.skip_ws();
            if self.cur.is_eof() {
                return Ok(());
            }
            self.statement()?;
        }
    }

    fn statement(&mut self) -> Result<(), SyntaxError> {
        if self.cur.starts_with("@prefix") || self.cur.starts_with("@base") {
            self.cur.bump();
            self.directive(true)
        } else if self.cur.eat_keyword("PREFIX") {
            self.prefix_decl(false)
        } else if self.cur.eat_keyword("BASE") {
            self.base_decl(false)
        } else if self.trig && self.cur.eat_keyword("GRAPH") {
            self.cur.skip_ws();
            let name = self.graph_label()?;
            self.cur.skip_ws();
            self.graph_block(Some(name))
        } else if self.trig && self.cur.peek() == Some('{') {
            self.graph_block(None)
        } else {
            self.statements_seen = true;
            if self.trig && (self.cur.peek() == Some('<') || self.peeks_pname()) {
                // Either a graph label or the subject of a triple.
                let save = self.cur.clone();
                let term = self.iri()?;
                self.cur.skip_ws();
                if self.cur.peek() == Some('{') {
                    return self.graph_block(Some(term));
                }
                self.cur = save;
            }
            if self.trig && self.cur.starts_with("_:") {
                let save = self.cur.clone();
                self.cur.bump();
                self.cur.bump();
                let _ = self.cur.read_blank_label()?;
                self.cur.skip_ws();
                if self.cur.peek() == Some('{') {
                    return Err(self.cur.error(SyntaxErrorKind::Unsupported("blank node graph labels".into())));
                }
                self.cur = save;
            }
            self.triples()?;
            self.cur.skip_ws();
            self.cur.expect('.')
        }
    }

    fn peeks_pname(&self) -> bool {
        let rest = self.cur.rest();
        match rest.chars().next() {
            Some(':') => true,
            Some(c) if c.is_alphabetic() => rest.chars().take_while(|c| !c.is_whitespace()).any(|c| c == ':'),
            _ => false,
        }
    }

    fn directive(&mut self, at_form: bool) -> Result<(), SyntaxError> {
        if self.cur.eat_keyword("prefix") {
            self.prefix_decl(at_form)
        } else if self.cur.eat_keyword("base") {
            self.base_decl(at_form)
        } else {
            Err(self.cur.unexpected("directive"))
        }
    }

    fn prefix_decl(&mut self, at_form: bool) -> Result<(), SyntaxError> {
        self.cur.skip_ws();
        let prefix = self.cur.read_pname_prefix()?;
        self.cur.skip_ws();
        let iri = self.iriref()?;
        if at_form {
            self.cur.skip_ws();
            self.cur.expect('.')?;
        }
        self.prefixes.insert(prefix, iri);
        Ok(())
    }

    fn base_decl(&mut self, at_form: bool) -> Result<(), SyntaxError> {
        if self.base_seen || self.statements_seen {
            return Err(self.cur.error(SyntaxErrorKind::Unsupported("base re-declaration mid-document".into())));
        }
        self.cur.skip_ws();
        let pos = self.cur.position();
        let iri = self.iriref()?;
        self.base = Some(Url::parse(&iri).map_err(|_| self.cur.error_at(pos, SyntaxErrorKind::InvalidIri(iri)))?);
        self.base_seen = true;
        if at_form {
            self.cur.skip_ws();
            self.cur.expect('.')?;
        }
        Ok(())
    }

    fn graph_label(&mut self) -> Result<Term, SyntaxError> {
        if self.cur.starts_with("_:") || self.cur.starts_with("[") {
            return Err(self.cur.error(SyntaxErrorKind::Unsupported("blank node graph labels".into())));
        }
        self.iri()
    }

    fn graph_block(&mut self, name: Option<Term>) -> Result<(), SyntaxError> {
        self.statements_seen = true;
        self.cur.expect('{')?;
        if let Some(n) = &name {
            self.dataset.graph_mut(Some(n));
        }
        let outer = std::mem::replace(&mut self.graph, name);
        loop {
            self.cur.skip_ws();
            if self.cur.eat('}') {
                break;
            }
            self.triples()?;
            self.cur.skip_ws();
            if self.cur.eat('}') {
                break;
            }
            self.cur.expect('.')?;
        }
        self.graph = outer;
        Ok(())
    }

    fn triples(&mut self) -> Result<(), SyntaxError> {
        match self.cur.peek() {
            Some('[') => {
                let subject = self.blank_property_list()?;
                self.cur.skip_ws();
                if !matches!(self.cur.peek(), Some('.' | '}') | None) {
                    self.predicate_object_list(&subject)?;
                }
                Ok(())
            }
            _ => {
                let subject = self.subject()?;
                self.cur.skip_ws();
                self.predicate_object_list(&subject)
            }
        }
    }

    fn subject(&mut self) -> Result<Term, SyntaxError> {
        match self.cur.peek() {
            Some('(') => self.collection(),
            Some('_') if self.cur.starts_with("_:") => self.blank_label(),
            Some('"' | '\'') => Err(self.cur.error(SyntaxErrorKind::Syntax("literal in subject position".into()))),
            _ => self.iri(),
        }
    }

    fn predicate_object_list(&mut self, subject: &Term) -> Result<(), SyntaxError> {
        loop {
            self.cur.skip_ws();
            let predicate = self.verb()?;
            loop {
                self.cur.skip_ws();
                let object = self.object()?;
                self.emit(subject.clone(), predicate.clone(), object);
                self.cur.skip_ws();
                if !self.cur.eat(',') {
                    break;
                }
            }
            self.cur.skip_ws();
            if !self.cur.eat(';') {
                return Ok(());
            }
            // Repeated and trailing semicolons are allowed.
            loop {
                self.cur.skip_ws();
                if !self.cur.eat(';') {
                    break;
                }
            }
            if matches!(self.cur.peek(), Some('.' | ']' | '}') | None) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> Result<Term, SyntaxError> {
        if self.cur.peek() == Some('a') && self.cur.peek_nth(1).is_none_or(|c| c.is_whitespace() || matches!(c, '<' | '[' | '(' | '"' | '_')) {
            self.cur.bump();
            return Ok(Term::iri(rdf::TYPE));
        }
        match self.cur.peek() {
            Some('<') => self.iri(),
            Some(c) if c == ':' || c.is_alphabetic() => self.iri(),
            _ => Err(self.cur.unexpected("predicate")),
        }
    }

    fn object(&mut self) -> Result<Term, SyntaxError> {
        match self.cur.peek() {
            Some('[') => self.blank_property_list(),
            Some('(') => self.collection(),
            Some('_') if self.cur.starts_with("_:") => self.blank_label(),
            Some('"' | '\'') => self.literal(),
            Some(c) if c.is_ascii_digit() || matches!(c, '+' | '-' | '.') => {
                let (lexical, decimal) = self.cur.read_number()?;
                Ok(Term::typed(&lexical, if decimal { xsd::DECIMAL } else { xsd::INTEGER }))
            }
            _ => {
                if self.cur.eat_keyword("true") {
                    return Ok(Term::boolean(true));
                }
                if self.cur.eat_keyword("false") {
                    return Ok(Term::boolean(false));
                }
                self.iri()
            }
        }
    }

    fn literal(&mut self) -> Result<Term, SyntaxError> {
        let lexical = self.cur.read_string(true)?;
        if self.cur.eat('@') {
            let lang = self.cur.read_langtag()?;
            Ok(Term::Literal(Literal::lang(lexical, &lang)))
        } else if self.cur.eat_str("^^") {
            let dt = self.iri()?;
            Ok(Term::Literal(Literal::typed(lexical, dt.as_iri().unwrap_or_default())))
        } else {
            Ok(Term::string(&lexical))
        }
    }

    fn blank_label(&mut self) -> Result<Term, SyntaxError> {
        self.cur.eat_str("_:");
        let label = self.cur.read_blank_label()?;
        Ok(Term::blank(&format!("{}{label}", self.blank_prefix)))
    }

    fn fresh_blank(&mut self) -> Term {
        self.anon += 1;
        // Labels that cannot collide with `_:` labels from the document.
        Term::blank(&format!("{}anon.{}", self.blank_prefix, self.anon))
    }

    fn blank_property_list(&mut self) -> Result<Term, SyntaxError> {
        self.cur.expect('[')?;
        let node = self.fresh_blank();
        self.cur.skip_ws();
        if !self.cur.eat(']') {
            self.predicate_object_list(&node)?;
            self.cur.skip_ws();
            self.cur.expect(']')?;
        }
        Ok(node)
    }

    fn collection(&mut self) -> Result<Term, SyntaxError> {
        self.cur.expect('(')?;
        let mut items = Vec::new();
        loop {
            self.cur.skip_ws();
            if self.cur.eat(')') {
                break;
            }
            if self.cur.is_eof() {
                return Err(self.cur.unexpected("')'"));
            }
            items.push(self.object()?);
        }
        let mut head = Term::iri(rdf::NIL);
        for item in items.into_iter().rev() {
            let node = self.fresh_blank();
            self.emit(node.clone(), Term::iri(rdf::FIRST), item);
            self.emit(node.clone(), Term::iri(rdf::REST), head);
            head = node;
        }
        Ok(head)
    }

    fn iriref(&mut self) -> Result<String, SyntaxError> {
        let pos = self.cur.position();
        let raw = self.cur.read_iriref()?;
        self.resolve(&raw).map_err(|_| self.cur.error_at(pos, SyntaxErrorKind::InvalidIri(raw)))
    }

    fn resolve(&self, raw: &str) -> Result<String, ()> {
        let has_scheme = raw
            .split_once(':')
            .is_some_and(|(s, _)| !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || "+-.".contains(c)) && s.starts_with(|c: char| c.is_ascii_alphabetic()));
        if has_scheme {
            return Ok(raw.to_owned());
        }
        match &self.base {
            Some(base) => base.join(raw).map(|u| u.to_string()).map_err(|_| ()),
            None => Ok(raw.to_owned()),
        }
    }

    fn iri(&mut self) -> Result<Term, SyntaxError> {
        let pos = self.cur.position();
        let value = if self.cur.peek() == Some('<') {
            self.iriref()?
        } else if self.cur.peek().is_some_and(|c| c == ':' || c.is_alphabetic()) {
            let prefix = self.cur.read_pname_prefix()?;
            let local = self.cur.read_pname_local()?;
            let ns = self
                .prefixes
                .get(&prefix)
                .ok_or_else(|| self.cur.error_at(pos, SyntaxErrorKind::UndefinedPrefix(prefix.clone())))?;
            format!("{ns}{local}")
        } else {
            return Err(self.cur.unexpected("IRI"));
        };
        Term::checked_iri(&value).map_err(|_| self.cur.error_at(pos, SyntaxErrorKind::InvalidIri(value)))
    }

    fn emit(&mut self, subject: Term, predicate: Term, object: Term) {
        self.dataset.insert(Quad { subject, predicate, object, graph: self.graph.clone() });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Triple;

    pub(crate) const MAX_TRAIN_CURRENT: &str = r#"
@prefix era: <http://data.europa.eu/949/> .
@prefix era-sh: <http://data.europa.eu/949/shapes/> .
@prefix sh: <http://www.w3.org/ns/shacl#> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .

era-sh:ContactLineSystemShape sh:property era-sh:MaximumTrainCurrent .
era-sh:MaximumTrainCurrent a sh:PropertyShape ;
 rdfs:comment "Indication of the maximum allowable train current"@en;
 sh:path era:maxTrainCurrent ;
 sh:datatype xsd:integer ;
 sh:pattern "^([1-9]\\d{0,3}|0)$" ;
 sh:maxCount 1 ;
 sh:severity sh:Violation ;
 sh:message "maxTrainCurrent (1.1.1.2.2.2): Defines ...(truncated)"@en .
"#;

    #[test]
    fn max_train_current_listing() {
        let g = parse_turtle(MAX_TRAIN_CURRENT, None).unwrap().graph;
        let shape = Term::iri("http://data.europa.eu/949/shapes/MaximumTrainCurrent");
        assert!(g.contains(&Triple::new(
            shape.clone(),
            Term::iri("http://www.w3.org/ns/shacl#maxCount"),
            Term::integer(1)
        )));
        let pattern = g.object(&shape, &Term::iri("http://www.w3.org/ns/shacl#pattern")).unwrap();
        assert_eq!(pattern, &Term::string(r"^([1-9]\d{0,3}|0)$"));
        assert_eq!(g.len(), 9);
    }

    #[test]
    fn collection_encoding() {
        let g = parse_turtle("<http://x/s> <http://x/p> ( <http://x/a> <http://x/b> ) .", None).unwrap().graph;
        let head = g.object(&Term::iri("http://x/s"), &Term::iri("http://x/p")).unwrap().clone();
        let first = Term::iri(rdf::FIRST);
        let rest = Term::iri(rdf::REST);
        assert_eq!(g.object(&head, &first), Some(&Term::iri("http://x/a")));
        let second = g.object(&head, &rest).unwrap().clone();
        assert_eq!(g.object(&second, &first), Some(&Term::iri("http://x/b")));
        assert_eq!(g.object(&second, &rest), Some(&Term::iri(rdf::NIL)));
        assert_eq!(g.len(), 5);
    }

    #[test]
    fn shared_blank_node_label() {
        let text = r#"
@prefix shds: <http://www.w3id.org/shacl-ds#> .
@prefix era-g: <http://data.europa.eu/949/graph/> .
@prefix era-rinf: <http://data.europa.eu/949/graph/rinf/> .
@prefix era-sh: <http://data.europa.eu/949/shapes/> .
_:refGraphs shds:or ( era-g:ontology era-g:skos era-g:countries era-g:borders ) .
era-sh:sg-rinf shds:targetGraphCombination [ shds:or ( era-rinf:0080 _:refGraphs ) ] .
era-sh:sg-rinf shds:targetGraphCombination [ shds:or ( era-rinf:0085 _:refGraphs ) ] .
"#;
        let g = parse_turtle(text, None).unwrap().graph;
        let or = Term::iri("http://www.w3id.org/shacl-ds#or");
        let ref_nodes: std::collections::HashSet<_> = g
            .matching(None, Some(&Term::iri(rdf::FIRST)), None)
            .filter(|t| t.object.is_blank())
            .map(|t| t.object.clone())
            .collect();
        assert_eq!(ref_nodes.len(), 1);
        let shared = ref_nodes.into_iter().next().unwrap();
        assert_eq!(g.objects(&shared, &or).count(), 1);
    }

    #[test]
    fn literal_forms() {
        let g = parse_turtle(
            r#"@prefix : <http://x/> .
:s :p 'single', """long "quoted" text""", -3, 2.50, true, "x"^^:dt, "y"@en-GB ."#,
            None,
        )
        .unwrap()
        .graph;
        assert_eq!(g.len(), 7);
        assert!(g.iter().any(|t| t.object == Term::typed("2.50", xsd::DECIMAL)));
        assert!(g.iter().any(|t| t.object == Term::string("long \"quoted\" text")));
        assert!(g.iter().any(|t| t.object == Term::Literal(Literal::lang("y", "en-gb"))));
    }

    #[test]
    fn prefix_and_base_forms() {
        let g = parse_turtle("BASE <http://x/base/>\nPREFIX ex: <http://x/>\n<rel> ex:p ex:o .", None).unwrap().graph;
        assert!(g.has_subject(&Term::iri("http://x/base/rel")));
        let err = parse_turtle("<http://x/a> <http://x/p> <http://x/o> .\n@base <http://x/> .", None).unwrap_err();
        assert!(matches!(err.kind, SyntaxErrorKind::Unsupported(_)));
    }

    #[test]
    fn undefined_prefix() {
        let err = parse_turtle("<http://x/s> nope:p <http://x/o> .", None).unwrap_err();
        assert_eq!(err.kind, SyntaxErrorKind::UndefinedPrefix("nope".into()));
        assert_eq!((err.line, err.column), (1, 14));
    }

    #[test]
    fn trig_blocks() {
        let text = r#"
@prefix ex: <http://x/> .
ex:a ex:p ex:b .
GRAPH ex:g1 { ex:s ex:p ex:o . ex:s ex:q 1 }
ex:g2 { ex:s ex:p ex:o2 }
ex:empty { }
"#;
        let d = parse_trig(text).unwrap().dataset;
        assert_eq!(d.default_graph().len(), 1);
        assert_eq!(d.graph_names().count(), 3);
        assert!(d.named_graph(&Term::iri("http://x/empty")).is_some_and(|g| g.is_empty()));
        assert_eq!(d.graph(Some(&Term::iri("http://x/g1"))).len(), 2);
    }

    #[test]
    fn trig_duplicate_blocks_merge() {
        let d = parse_trig("<http://x/g> { <http://x/a> <http://x/p> 1 . }\n<http://x/g> { <http://x/a> <http://x/p> 2 . }")
            .unwrap()
            .dataset;
        assert_eq!(d.graph(Some(&Term::iri("http://x/g"))).len(), 2);
    }
}
