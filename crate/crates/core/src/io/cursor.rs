//! Character cursor with line/column tracking and the lexical productions
//! shared by the N-Quads, Turtle/TriG and SPARQL grammars.

use super::{SyntaxError, SyntaxErrorKind};

#[derive(Clone)]
pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    column: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0, line: 1, column: 1 }
    }

    pub fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub fn is_eof(&self) -> bool {
        self.pos >= self.src.len()
    }

    pub fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    pub fn peek_nth(&self, n: usize) -> Option<char> {
        self.rest().chars().nth(n)
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn starts_with(&self, s: &str) -> bool {
        self.rest().starts_with(s)
    }

    pub fn eat_str(&mut self, s: &str) -> bool {
        if self.starts_with(s) {
            for _ in s.chars() {
                self.bump();
            }
            true
        } else {
            false
        }
    }

    /// Case-insensitive keyword followed by a non-name character.
    pub fn eat_keyword(&mut self, kw: &str) -> bool {
        let rest = self.rest();
        if rest.len() < kw.len() || !rest.is_char_boundary(kw.len()) || !rest[..kw.len()].eq_ignore_ascii_case(kw) {
            return false;
        }
        if rest[kw.len()..].chars().next().is_some_and(|c| c.is_alphanumeric() || c == '_' || c == ':' || c == '-') {
            return false;
        }
        for _ in kw.chars() {
            self.bump();
        }
        true
    }

    pub fn position(&self) -> (usize, usize) {
        (self.line, self.column)
    }

    pub fn error(&self, kind: SyntaxErrorKind) -> SyntaxError {
        SyntaxError { line: self.line, column: self.column, kind }
    }

    pub fn error_at(&self, (line, column): (usize, usize), kind: SyntaxErrorKind) -> SyntaxError {
        SyntaxError { line, column, kind }
    }

    pub fn unexpected(&self, expected: &str) -> SyntaxError {
        let found = match self.peek() {
            Some(c) => format!("{c:?}"),
            None => "end of input".to_owned(),
        };
        self.error(SyntaxErrorKind::Syntax(format!("expected {expected}, found {found}")))
    }

    pub fn expect(&mut self, c: char) -> Result<(), SyntaxError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("{c:?}")))
        }
    }

    /// Skips whitespace and `#` comments (also across lines).
    pub fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    /// Skips spaces and tabs only (line-oriented formats).
    pub fn skip_inline_ws(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t' | '\r')) {
            self.bump();
        }
    }

    /// `<...>` with `\u`/`\U` escapes. The cursor must be on `<`.
    pub fn read_iriref(&mut self) -> Result<String, SyntaxError> {
        let start = self.position();
        self.expect('<')?;
        let mut out = String::new();
        loop {
            match self.bump() {
                None => return Err(self.error_at(start, SyntaxErrorKind::Syntax("unterminated IRI".into()))),
                Some('>') => break,
                Some('\\') => {
                    let c = self.read_unicode_escape()?;
                    out.push(c);
                }
                Some(c) if c.is_whitespace() || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`') => {
                    return Err(self.error_at(start, SyntaxErrorKind::InvalidIri(format!("{out}{c}"))));
                }
                Some(c) => out.push(c),
            }
        }
        Ok(out)
    }

    /// After a backslash: `uXXXX` or `UXXXXXXXX`.
    fn read_unicode_escape(&mut self) -> Result<char, SyntaxError> {
        let pos = self.position();
        let len = match self.bump() {
            Some('u') => 4,
            Some('U') => 8,
            other => {
                return Err(self.error_at(pos, SyntaxErrorKind::BadEscape(format!("\\{}", other.unwrap_or(' ')))));
            }
        };
        let mut hex = String::new();
        for _ in 0..len {
            match self.bump() {
                Some(c) if c.is_ascii_hexdigit() => hex.push(c),
                _ => return Err(self.error_at(pos, SyntaxErrorKind::BadEscape(format!("\\u{hex}")))),
            }
        }
        u32::from_str_radix(&hex, 16)
            .ok()
            .and_then(char::from_u32)
            .ok_or_else(|| self.error_at(pos, SyntaxErrorKind::BadEscape(format!("\\u{hex}"))))
    }

    /// A string literal in any of the four quote forms. When `allow_long` is false only
    /// the short double-quoted form is accepted (N-Triples).
    pub fn read_string(&mut self, allow_long: bool) -> Result<String, SyntaxError> {
        let start = self.position();
        let quote = match self.peek() {
            Some(q @ '"') => q,
            Some(q @ '\'') if allow_long => q,
            _ => return Err(self.unexpected("string literal")),
        };
        let long_delim: String = std::iter::repeat_n(quote, 3).collect();
        let long = allow_long && self.starts_with(&long_delim);
        if long {
            self.eat_str(&long_delim);
        } else {
            self.bump();
        }
        let mut out = String::new();
        loop {
            if long && self.starts_with(&long_delim) {
                // A run of more than three quotes ends with the last three.
                let mut extra = 0;
                while self.rest().chars().nth(3 + extra) == Some(quote) {
                    extra += 1;
                }
                for _ in 0..extra {
                    out.push(quote);
                    self.bump();
                }
                self.eat_str(&long_delim);
                return Ok(out);
            }
            match self.bump() {
                None => return Err(self.error_at(start, SyntaxErrorKind::Syntax("unterminated string".into()))),
                Some(c) if c == quote && !long => return Ok(out),
                Some('\n' | '\r') if !long => {
                    return Err(self.error_at(start, SyntaxErrorKind::Syntax("newline in short string".into())));
                }
                Some('\\') => {
                    let pos = self.position();
                    let c = match self.peek() {
                        Some('t') => '\t',
                        Some('b') => '\u{08}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{0C}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u' | 'U') => {
                            out.push(self.read_unicode_escape()?);
                            continue;
                        }
                        other => {
                            return Err(self.error_at(
                                pos,
                                SyntaxErrorKind::BadEscape(format!("\\{}", other.map(String::from).unwrap_or_default())),
                            ));
                        }
                    };
                    self.bump();
                    out.push(c);
                }
                Some(c) => out.push(c),
            }
        }
    }

    /// Language tag after `@`.
    pub fn read_langtag(&mut self) -> Result<String, SyntaxError> {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphabetic() || (!out.is_empty() && (c.is_ascii_digit() || c == '-')) {
                out.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if out.is_empty() || out.ends_with('-') {
            return Err(self.unexpected("language tag"));
        }
        Ok(out)
    }

    /// Blank node label after `_:`.
    pub fn read_blank_label(&mut self) -> Result<String, SyntaxError> {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            let ok = c.is_alphanumeric() || c == '_' || c == '-' || (c == '.' && !out.is_empty() && self.peek_nth(1).is_some_and(is_name_char));
            if !ok {
                break;
            }
            out.push(c);
            self.bump();
        }
        if out.is_empty() {
            return Err(self.unexpected("blank node label"));
        }
        Ok(out)
    }

    /// Prefix part of a prefixed name up to (excluding) `:`; may be empty.
    pub fn read_pname_prefix(&mut self) -> Result<String, SyntaxError> {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            let ok = if out.is_empty() {
                c.is_alphabetic()
            } else {
                c.is_alphanumeric() || c == '_' || c == '-' || (c == '.' && self.peek_nth(1).is_some_and(|n| n != ':' && is_name_char(n)))
            };
            if !ok {
                break;
            }
            out.push(c);
            self.bump();
        }
        if self.peek() != Some(':') {
            return Err(self.unexpected("':' in prefixed name"));
        }
        self.bump();
        Ok(out)
    }

    /// Local part of a prefixed name (after `:`), with `%xx` kept and `\` escapes resolved.
    pub fn read_pname_local(&mut self) -> Result<String, SyntaxError> {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            let dot_inside = c == '.' && self.peek_nth(1).is_some_and(|n| is_name_char(n) || n == ':' || n == '%');
            if is_name_char(c) || c == ':' || dot_inside {
                out.push(c);
                self.bump();
            } else if c == '%' {
                let (a, b) = (self.peek_nth(1), self.peek_nth(2));
                if !(a.is_some_and(|a| a.is_ascii_hexdigit()) && b.is_some_and(|b| b.is_ascii_hexdigit())) {
                    return Err(self.error(SyntaxErrorKind::BadEscape("%".into())));
                }
                for _ in 0..3 {
                    out.push(self.bump().unwrap());
                }
            } else if c == '\\' {
                self.bump();
                match self.bump() {
                    Some(e) if "_~.-!$&'()*+,;=/?#@%".contains(e) => out.push(e),
                    other => {
                        return Err(self.error(SyntaxErrorKind::BadEscape(format!("\\{}", other.unwrap_or(' ')))));
                    }
                }
            } else {
                break;
            }
        }
        Ok(out)
    }

    /// Integer or decimal; exponents are rejected. Returns (lexical, is_decimal).
    pub fn read_number(&mut self) -> Result<(String, bool), SyntaxError> {
        let mut out = String::new();
        if let Some(c @ ('+' | '-')) = self.peek() {
            out.push(c);
            self.bump();
        }
        let mut digits = 0;
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            out.push(c);
            self.bump();
            digits += 1;
        }
        let mut decimal = false;
        if self.peek() == Some('.') && self.peek_nth(1).is_some_and(|c| c.is_ascii_digit()) {
            decimal = true;
            out.push('.');
            self.bump();
            while let Some(c) = self.peek().filter(char::is_ascii_digit) {
                out.push(c);
                self.bump();
                digits += 1;
            }
        }
        if digits == 0 {
            return Err(self.unexpected("number"));
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            return Err(self.error(SyntaxErrorKind::Unsupported("double literals with exponent".into())));
        }
        Ok((out, decimal))
    }
}

pub(crate) fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-' || c == '\u{B7}'
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_forms() {
        assert_eq!(Cursor::new(r#""a\"b""#).read_string(true).unwrap(), "a\"b");
        assert_eq!(Cursor::new("'x'").read_string(true).unwrap(), "x");
        assert_eq!(Cursor::new("\"\"\"multi\nline\"\"\"").read_string(true).unwrap(), "multi\nline");
        assert_eq!(Cursor::new("\"\"\"ends \"quoted\"\"\"\"").read_string(true).unwrap(), "ends \"quoted\"");
        assert_eq!(Cursor::new(r#""é\U0001F600""#).read_string(true).unwrap(), "é😀");
        assert!(Cursor::new(r#""\q""#).read_string(true).is_err());
        assert!(Cursor::new("\"open").read_string(true).is_err());
    }

    #[test]
    fn pname_local_stops_before_terminal_dot() {
        let mut c = Cursor::new("0080.");
        assert_eq!(c.read_pname_local().unwrap(), "0080");
        assert_eq!(c.peek(), Some('.'));
        let mut c = Cursor::new("a.b ");
        assert_eq!(c.read_pname_local().unwrap(), "a.b");
    }

    #[test]
    fn numbers() {
        assert_eq!(Cursor::new("12 ").read_number().unwrap(), ("12".into(), false));
        assert_eq!(Cursor::new("-1.5").read_number().unwrap(), ("-1.5".into(), true));
        assert_eq!(Cursor::new("1.").read_number().unwrap(), ("1".into(), false));
        assert!(Cursor::new("1e3").read_number().is_err());
    }

    #[test]
    fn positions_track_lines() {
        let mut c = Cursor::new("ab\ncd");
        for _ in 0..4 {
            c.bump();
        }
        assert_eq!(c.position(), (2, 2));
    }
}
