use crate::model::{Dataset, Literal, Quad, Term};
use crate::vocab::xsd;

use super::{
    BlankScope, Cursor, ParseOptions, ParsedDataset, ParsedGraph, PrefixMap, SyntaxError, SyntaxErrorKind,
};

pub fn parse_nquads(text: &str) -> Result<ParsedDataset, SyntaxError> {
    parse_nquads_with(text, &ParseOptions::default())
}

pub fn parse_nquads_with(text: &str, options: &ParseOptions) -> Result<ParsedDataset, SyntaxError> {
    let dataset = parse_lines(text, true, &options.blank_scope)?;
    Ok(ParsedDataset { dataset, prefixes: PrefixMap::new() })
}

pub fn parse_ntriples(text: &str) -> Result<ParsedGraph, SyntaxError> {
    let mut dataset = parse_lines(text, false, &BlankScope::Fresh)?;
    let graph = std::mem::take(dataset.default_graph_mut());
    Ok(ParsedGraph { graph, prefixes: PrefixMap::new() })
}

fn parse_lines(text: &str, allow_graph: bool, scope: &BlankScope) -> Result<Dataset, SyntaxError> {
    let prefix = scope.prefix();
    let mut dataset = Dataset::new();
    let mut cur = Cursor::new(text);
    loop {
        cur.skip_inline_ws();
        match cur.peek() {
            None => break,
            Some('\n') => {
                cur.bump();
                continue;
            }
            Some('#') => {
                skip_comment(&mut cur);
                continue;
            }
            _ => {}
        }
        let start = cur.position();
        let subject = term(&mut cur, &prefix)?;
        if subject.is_literal() {
            return Err(cur.error_at(start, SyntaxErrorKind::Syntax("literal in subject position".into())));
        }
        cur.skip_inline_ws();
        let pos = cur.position();
        let predicate = term(&mut cur, &prefix)?;
        if !predicate.is_iri() {
            return Err(cur.error_at(pos, SyntaxErrorKind::Syntax("predicate must be an IRI".into())));
        }
        cur.skip_inline_ws();
        let object = term(&mut cur, &prefix)?;
        cur.skip_inline_ws();
        let mut graph = None;
        if cur.peek() != Some('.') {
            let pos = cur.position();
            if !allow_graph {
                return Err(cur.unexpected("'.'"));
            }
            let g = term(&mut cur, &prefix)?;
            if !g.is_iri() {
                return Err(cur.error_at(pos, SyntaxErrorKind::Syntax("graph name must be an IRI".into())));
            }
            graph = Some(g);
            cur.skip_inline_ws();
        }
        cur.expect('.')?;
        cur.skip_inline_ws();
        match cur.peek() {
            None | Some('\n') => {}
            Some('#') => skip_comment(&mut cur),
            Some(_) => return Err(cur.unexpected("end of line")),
        }
        dataset.insert(Quad { subject, predicate, object, graph });
    }
    Ok(dataset)
}

fn skip_comment(cur: &mut Cursor<'_>) {
    while let Some(c) = cur.bump() {
        if c == '\n' {
            break;
        }
    }
}

fn term(cur: &mut Cursor<'_>, blank_prefix: &str) -> Result<Term, SyntaxError> {
    match cur.peek() {
        Some('<') => {
            let pos = cur.position();
            let iri = cur.read_iriref()?;
            Term::checked_iri(&iri).map_err(|_| cur.error_at(pos, SyntaxErrorKind::InvalidIri(iri)))
        }
        Some('_') => {
            cur.bump();
            cur.expect(':')?;
            let label = cur.read_blank_label()?;
            Ok(Term::blank(&format!("{blank_prefix}{label}")))
        }
        Some('"') => {
            let lexical = cur.read_string(false)?;
            if cur.eat('@') {
                let lang = cur.read_langtag()?;
                Ok(Term::Literal(Literal::lang(lexical, &lang)))
            } else if cur.eat_str("^^") {
                let pos = cur.position();
                let dt = cur.read_iriref()?;
                Term::checked_iri(&dt).map_err(|_| cur.error_at(pos, SyntaxErrorKind::InvalidIri(dt.clone())))?;
                Ok(Term::Literal(Literal::typed(lexical, dt)))
            } else {
                Ok(Term::Literal(Literal::typed(lexical, xsd::STRING)))
            }
        }
        _ => Err(cur.unexpected("IRI, blank node or literal")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quad_in_named_graph() {
        let d = parse_nquads("<s> <p> \"1\"^^<http://www.w3.org/2001/XMLSchema#integer> <g> .\n").unwrap().dataset;
        let g = Term::iri("g");
        assert_eq!(d.graph(Some(&g)).len(), 1);
        assert!(d.default_graph().is_empty());
        let t = d.graph(Some(&g)).iter().next().unwrap().clone();
        assert_eq!(t.object, Term::integer(1));
    }

    #[test]
    fn line_without_graph_goes_to_default() {
        let d = parse_nquads("# comment\n<http://x/s> <http://x/p> _:b . # trailing\n").unwrap().dataset;
        assert_eq!(d.default_graph().len(), 1);
        assert_eq!(d.graph_names().count(), 0);
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_nquads("<http://x/s> <http://x/p> <http://x/o> .\n<http://x/s> \"lit\" <http://x/o> .\n")
            .unwrap_err();
        assert_eq!((err.line, err.column), (2, 14));
        let err = parse_nquads("<http://x/s> <http://x/p> \"a\\qb\" .").unwrap_err();
        assert!(matches!(err.kind, SyntaxErrorKind::BadEscape(_)));
        let err = parse_nquads("<http://x/s> <http://x/p q> <o> .").unwrap_err();
        assert!(matches!(err.kind, SyntaxErrorKind::InvalidIri(_)));
        assert!(parse_ntriples("<http://x/s> <http://x/p> <http://x/o> <http://x/g> .").is_err());
    }

    #[test]
    fn blank_nodes_scoped_per_document() {
        let a = parse_nquads("_:b0 <http://x/p> <http://x/o> .").unwrap().dataset;
        let b = parse_nquads("_:b0 <http://x/p> <http://x/o> .").unwrap().dataset;
        let sa = a.default_graph().iter().next().unwrap().subject.clone();
        let sb = b.default_graph().iter().next().unwrap().subject.clone();
        assert_ne!(sa, sb);
    }
}
