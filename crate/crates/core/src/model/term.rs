use std::fmt;
use std::sync::Arc;

use crate::vocab::{rdf, xsd};

use super::ModelError;

/// An RDF term: IRI, blank node or literal.
///
/// Terms are cheap to clone (reference counted) and compare structurally.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Iri(Arc<str>),
    Blank(Arc<str>),
    Literal(Literal),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TermKind {
    Iri,
    Blank,
    Literal,
}

/// A literal with lexical form, datatype IRI and optional language tag.
///
/// Comparison is lexical: `"01"^^xsd:integer` and `"1"^^xsd:integer` are distinct.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal(Arc<LiteralInner>);

#[derive(PartialEq, Eq, Hash, PartialOrd, Ord)]
struct LiteralInner {
    lexical: Box<str>,
    datatype: Box<str>,
    language: Option<Box<str>>,
}

impl Literal {
    pub fn typed(lexical: impl Into<Box<str>>, datatype: impl Into<Box<str>>) -> Self {
        Literal(Arc::new(LiteralInner {
            lexical: lexical.into(),
            datatype: datatype.into(),
            language: None,
        }))
    }

    pub fn string(lexical: impl Into<Box<str>>) -> Self {
        Self::typed(lexical, xsd::STRING)
    }

    /// Language-tagged string; the tag is lower-cased.
    pub fn lang(lexical: impl Into<Box<str>>, language: &str) -> Self {
        Literal(Arc::new(LiteralInner {
            lexical: lexical.into(),
            datatype: rdf::LANG_STRING.into(),
            language: Some(language.to_ascii_lowercase().into()),
        }))
    }

    pub fn lexical(&self) -> &str {
        &self.0.lexical
    }

    pub fn datatype(&self) -> &str {
        &self.0.datatype
    }

    pub fn language(&self) -> Option<&str> {
        self.0.language.as_deref()
    }
}

impl Term {
    /// Builds an IRI term without validation. Use [`Term::checked_iri`] for untrusted input.
    pub fn iri(value: &str) -> Self {
        debug_assert!(is_valid_iri(value), "invalid IRI {value:?}");
        Term::Iri(Arc::from(value))
    }

    pub fn checked_iri(value: &str) -> Result<Self, ModelError> {
        if is_valid_iri(value) {
            Ok(Term::Iri(Arc::from(value)))
        } else {
            Err(ModelError::InvalidIri(value.to_owned()))
        }
    }

    pub fn blank(label: &str) -> Self {
        Term::Blank(Arc::from(label))
    }

    pub fn literal(lit: Literal) -> Self {
        Term::Literal(lit)
    }

    pub fn string(value: &str) -> Self {
        Term::Literal(Literal::string(value))
    }

    pub fn typed(lexical: &str, datatype: &str) -> Self {
        Term::Literal(Literal::typed(lexical, datatype))
    }

    pub fn integer(value: i64) -> Self {
        Term::Literal(Literal::typed(value.to_string(), xsd::INTEGER))
    }

    pub fn boolean(value: bool) -> Self {
        Term::Literal(Literal::typed(if value { "true" } else { "false" }, xsd::BOOLEAN))
    }

    pub fn kind(&self) -> TermKind {
        match self {
            Term::Iri(_) => TermKind::Iri,
            Term::Blank(_) => TermKind::Blank,
            Term::Literal(_) => TermKind::Literal,
        }
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::Blank(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Term::Iri(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(l) => Some(l),
            _ => None,
        }
    }

    /// True when this is the IRI `iri`.
    pub fn is(&self, iri: &str) -> bool {
        self.as_iri() == Some(iri)
    }

    /// The SPARQL `str()` of the term; blank nodes have none.
    pub fn lexical_str(&self) -> Option<&str> {
        match self {
            Term::Iri(v) => Some(v),
            Term::Literal(l) => Some(l.lexical()),
            Term::Blank(_) => None,
        }
    }
}

/// Non-empty, no whitespace, none of the characters N-Triples forbids inside `<...>`.
pub fn is_valid_iri(value: &str) -> bool {
    !value.is_empty()
        && !value.chars().any(|c| {
            c.is_whitespace() || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\')
        })
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("\"")?;
        write_escaped(f, self.lexical())?;
        f.write_str("\"")?;
        if let Some(lang) = self.language() {
            write!(f, "@{lang}")
        } else if self.datatype() != xsd::STRING {
            write!(f, "^^<{}>", self.datatype())
        } else {
            Ok(())
        }
    }
}

/// N-Triples string escaping.
pub(crate) fn write_escaped(out: &mut impl fmt::Write, value: &str) -> fmt::Result {
    for c in value.chars() {
        match c {
            '"' => out.write_str("\\\"")?,
            '\\' => out.write_str("\\\\")?,
            '\n' => out.write_str("\\n")?,
            '\r' => out.write_str("\\r")?,
            '\t' => out.write_str("\\t")?,
            '\u{08}' => out.write_str("\\b")?,
            '\u{0C}' => out.write_str("\\f")?,
            c if (c as u32) < 0x20 || c as u32 == 0x7F => write!(out, "\\u{:04X}", c as u32)?,
            c => out.write_char(c)?,
        }
    }
    Ok(())
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(v) => write!(f, "<{v}>"),
            Term::Blank(v) => write!(f, "_:{v}"),
            Term::Literal(l) => l.fmt(f),
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structural_equality() {
        assert_eq!(Term::iri("http://x/a"), Term::iri("http://x/a"));
        assert_ne!(Term::iri("http://x/a"), Term::blank("http://x/a"));
        assert_ne!(Term::typed("1", xsd::INTEGER), Term::typed("01", xsd::INTEGER));
        assert_ne!(Term::string("1"), Term::typed("1", xsd::INTEGER));
    }

    #[test]
    fn language_implies_lang_string() {
        let l = Literal::lang("rail", "EN");
        assert_eq!(l.datatype(), rdf::LANG_STRING);
        assert_eq!(l.language(), Some("en"));
        assert_eq!(Literal::string("x").language(), None);
    }

    #[test]
    fn iri_validation() {
        assert!(Term::checked_iri("http://data.europa.eu/949/maxTrainCurrent").is_ok());
        assert!(Term::checked_iri("").is_err());
        assert!(Term::checked_iri("http://a b").is_err());
        assert!(Term::checked_iri("http://a\tb").is_err());
    }

    #[test]
    fn display_escapes() {
        let t = Term::string("a\"b\nc");
        assert_eq!(t.to_string(), r#""a\"b\nc""#);
        assert_eq!(Term::integer(5).to_string(), "\"5\"^^<http://www.w3.org/2001/XMLSchema#integer>");
    }
}
